//! Structured shifted QR for upper Hessenberg matrices of the form
//! `M = F + u v^*` with `F` Hermitian.
//!
//! Only the diagonal `gamma`, the subdiagonal `beta` and the generators
//! `u`, `v` are stored. Because `F` is Hermitian and `M` vanishes below the
//! subdiagonal, every other entry of `M` is recoverable:
//!
//! * `M(i, i+1) = conj(beta_i) - conj(u_{i+1}) v_i + u_i conj(v_{i+1})`
//! * `M(i, j)   = u_i conj(v_j) - v_i conj(u_j)` for `j > i + 1`
//!
//! A QR step `M - mu I = QR`, `M' = RQ + mu I` is a unitary similarity, so
//! `M' = Q^* F Q + (Q^* u)(Q^* v)^*` keeps the same splitting. The step is
//! carried out explicitly: the left rotations produce the diagonal and
//! superdiagonal of `R` one row at a time (the far entries of a partially
//! rotated row are again given by the rotated generators), and the new
//! `gamma`, `beta` follow from those two diagonals and the rotations alone.
//! Each step costs O(active size).

use num_complex::Complex64;

use crate::comrade::ComradeMatrix;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::scalar::eig2x2;
use crate::spectrum::Spectrum;

pub const DEFAULT_TOL: f64 = 1e-15;
pub const DEFAULT_MAX_SWEEPS: usize = 30;
/// Exceptional shift `gamma_hi + EXCEPTIONAL_SHIFT * |beta_{hi-1}|`.
pub const EXCEPTIONAL_SHIFT: Complex64 = Complex64::new(0.9, 0.1);
const MAX_EXCEPTIONAL_ROUNDS: usize = 3;

/// A plane rotation acting on rows `k`, `k+1` as
/// `[[c, s], [-conj(s), c]]` (the conjugate transpose of the factor in `Q`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Givens {
    pub k: usize,
    pub c: f64,
    pub s: Complex64,
}

impl Givens {
    /// Rotation whose left application zeroes `b` against `a`.
    fn zeroing(k: usize, a: Complex64, b: Complex64) -> Self {
        if b == Complex64::new(0.0, 0.0) {
            return Self { k, c: 1.0, s: b };
        }
        let na = a.norm();
        let nb = b.norm();
        if na == 0.0 {
            return Self {
                k,
                c: 0.0,
                s: b.conj() / nb,
            };
        }
        let r = na.hypot(nb);
        Self {
            k,
            c: na / r,
            s: (a / na) * b.conj() / r,
        }
    }

    #[inline]
    pub fn apply_left(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (x * self.c + self.s * y, -self.s.conj() * x + y * self.c)
    }

    /// Right multiplication by the `Q` factor on columns `k`, `k+1`.
    #[inline]
    pub fn apply_right(&self, x: Complex64, y: Complex64) -> (Complex64, Complex64) {
        (x * self.c + y * self.s.conj(), -x * self.s + y * self.c)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorHessenberg {
    gamma: Vec<Complex64>,
    beta: Vec<Complex64>,
    u: Vec<Complex64>,
    v: Vec<Complex64>,
    lo: usize,
    hi: usize,
}

impl GeneratorHessenberg {
    /// Generator form of `C^T = T + e_1 w^T`: `u = e_1`, `v = w`.
    pub fn from_comrade(c: &ComradeMatrix) -> Self {
        let n = c.order();
        let re = |x: &f64| Complex64::new(*x, 0.0);
        let mut u = vec![Complex64::new(0.0, 0.0); n];
        if n > 0 {
            u[0] = Complex64::new(1.0, 0.0);
        }
        Self {
            gamma: c.diag.iter().map(re).collect(),
            beta: c.offdiag.iter().map(re).collect(),
            u,
            v: c.spike.iter().map(re).collect(),
            lo: 0,
            hi: n.saturating_sub(1),
        }
    }

    pub fn from_parts(
        gamma: Vec<Complex64>,
        beta: Vec<Complex64>,
        u: Vec<Complex64>,
        v: Vec<Complex64>,
    ) -> Result<Self> {
        let n = gamma.len();
        if n == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for len in [u.len(), v.len(), beta.len() + 1] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: len,
                });
            }
        }
        Ok(Self {
            gamma,
            beta,
            u,
            v,
            lo: 0,
            hi: n - 1,
        })
    }

    pub fn order(&self) -> usize {
        self.gamma.len()
    }

    pub fn active(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn set_active(&mut self, lo: usize, hi: usize) -> Result<()> {
        if lo > hi || hi >= self.order() {
            return Err(Error::IndexOutOfRange {
                i: lo,
                j: hi,
                lo: 0,
                hi: self.order().saturating_sub(1),
            });
        }
        self.lo = lo;
        self.hi = hi;
        Ok(())
    }

    pub fn gamma(&self) -> &[Complex64] {
        &self.gamma
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    pub fn u(&self) -> &[Complex64] {
        &self.u
    }

    pub fn v(&self) -> &[Complex64] {
        &self.v
    }

    #[inline]
    fn superdiag(&self, i: usize) -> Complex64 {
        self.beta[i].conj() - self.u[i + 1].conj() * self.v[i] + self.u[i] * self.v[i + 1].conj()
    }

    #[inline]
    fn far(&self, i: usize, j: usize) -> Complex64 {
        self.u[i] * self.v[j].conj() - self.v[i] * self.u[j].conj()
    }

    fn entry_unchecked(&self, i: usize, j: usize) -> Complex64 {
        if i > j + 1 {
            Complex64::new(0.0, 0.0)
        } else if i == j + 1 {
            self.beta[j]
        } else if i == j {
            self.gamma[i]
        } else if j == i + 1 {
            self.superdiag(i)
        } else {
            self.far(i, j)
        }
    }

    /// Entry `M(i, j)`; both indices must lie in the active block.
    pub fn entry(&self, i: usize, j: usize) -> Result<Complex64> {
        let in_block = |x: usize| x >= self.lo && x <= self.hi;
        if !in_block(i) || !in_block(j) {
            return Err(Error::IndexOutOfRange {
                i,
                j,
                lo: self.lo,
                hi: self.hi,
            });
        }
        Ok(self.entry_unchecked(i, j))
    }

    /// Full dense reconstruction, ignoring the active range.
    pub fn to_dense(&self) -> DenseMatrix<Complex64> {
        DenseMatrix::from_fn(self.order(), |i, j| self.entry_unchecked(i, j))
    }

    pub fn trace(&self) -> Complex64 {
        self.gamma.iter().sum()
    }

    /// Largest `|Im(gamma_i - u_i conj(v_i))|`, the only place where the
    /// representation can drift away from a Hermitian `F`.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.order())
            .map(|i| (self.gamma[i] - self.u[i] * self.v[i].conj()).im.abs())
            .fold(0.0, f64::max)
    }

    /// Eigenvalue of the trailing 2x2 of the active block closest to its last
    /// diagonal entry. Returns that entry for a 1x1 block.
    pub fn wilkinson_shift(&self) -> Complex64 {
        let hi = self.hi;
        if hi == self.lo {
            return self.gamma[hi];
        }
        let a = self.entry_unchecked(hi - 1, hi - 1);
        let b = self.entry_unchecked(hi - 1, hi);
        let c = self.entry_unchecked(hi, hi - 1);
        let d = self.entry_unchecked(hi, hi);
        eig2x2(a, b, c, d).0
    }

    /// One explicit shifted QR step on the active block.
    pub fn qr_step(&mut self, shift: Complex64) {
        self.qr_step_with(shift, |_| {});
    }

    /// As [`qr_step`](Self::qr_step), returning the rotations in the order
    /// they were applied.
    pub fn qr_step_recorded(&mut self, shift: Complex64) -> Vec<Givens> {
        let mut out = Vec::with_capacity(self.hi - self.lo);
        self.qr_step_with(shift, |g| out.push(g));
        out
    }

    fn qr_step_with(&mut self, mu: Complex64, mut on_rotation: impl FnMut(Givens)) {
        let (lo, hi) = (self.lo, self.hi);
        if hi == lo {
            return;
        }
        #[cfg(debug_assertions)]
        let (trace_before, trace_scale) = {
            let g = &self.gamma[lo..=hi];
            (g.iter().sum::<Complex64>(), g.iter().map(|z| z.norm()).sum::<f64>())
        };

        let zero = Complex64::new(0.0, 0.0);
        // Row k of the partially reduced matrix at columns k and k+1.
        let mut x = self.gamma[lo] - mu;
        let mut y = self.superdiag(lo);
        let mut prev: Option<Givens> = None;

        for k in lo..hi {
            let b = self.beta[k];
            let g1 = self.gamma[k + 1] - mu;
            let (sup_next, far_k) = if k + 2 <= hi {
                (self.superdiag(k + 1), self.far(k, k + 2))
            } else {
                (zero, zero)
            };

            let rot = Givens::zeroing(k, x, b);
            let r_diag = x * rot.c + rot.s * b;
            let r_sup = y * rot.c + rot.s * g1;
            let sc = rot.s.conj();
            x = -sc * y + g1 * rot.c;
            y = -sc * far_k + sup_next * rot.c;

            let (u0, u1) = rot.apply_left(self.u[k], self.u[k + 1]);
            self.u[k] = u0;
            self.u[k + 1] = u1;
            let (v0, v1) = rot.apply_left(self.v[k], self.v[k + 1]);
            self.v[k] = v0;
            self.v[k + 1] = v1;

            // RQ: column k is final once rotations k-1 and k have acted.
            let c_prev = prev.map_or(1.0, |p| p.c);
            self.gamma[k] = r_diag * (c_prev * rot.c) + sc * r_sup + mu;
            if let Some(p) = prev {
                self.beta[k - 1] = p.s.conj() * r_diag;
            }
            on_rotation(rot);
            prev = Some(rot);
        }
        let last = prev.expect("active block has at least two rows");
        self.gamma[hi] = x * last.c + mu;
        self.beta[hi - 1] = last.s.conj() * x;

        #[cfg(debug_assertions)]
        {
            let after: Complex64 = self.gamma[lo..=hi].iter().sum();
            let scale = trace_scale.max(after.norm()).max(f64::MIN_POSITIVE);
            debug_assert!(
                (after - trace_before).norm() <= 1e-12 * scale,
                "trace drift {} vs {}",
                after,
                trace_before
            );
        }
    }

    fn negligible(&self, k: usize, tol: f64) -> bool {
        let b = self.beta[k].norm();
        b == 0.0 || b <= tol * (self.gamma[k].norm() + self.gamma[k + 1].norm())
    }
}

/// Work counters of a full eigenvalue run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct QrStats {
    pub qr_steps: usize,
    pub rotations: usize,
    pub exceptional_shifts: usize,
}

/// All eigenvalues of a comrade matrix with default tolerances.
pub fn eigenvalues_default(c: &ComradeMatrix) -> Result<Spectrum> {
    eigenvalues(c, DEFAULT_TOL, DEFAULT_MAX_SWEEPS)
}

pub fn eigenvalues(c: &ComradeMatrix, tol: f64, max_sweeps_per_eig: usize) -> Result<Spectrum> {
    eigenvalues_with_stats(c, tol, max_sweeps_per_eig).map(|(s, _)| s)
}

/// Drives Wilkinson-shifted QR steps with deflation on the transpose of `c`.
pub fn eigenvalues_with_stats(
    c: &ComradeMatrix,
    tol: f64,
    max_sweeps_per_eig: usize,
) -> Result<(Spectrum, QrStats)> {
    if !(tol > 0.0) {
        return Err(Error::InvalidParameters(format!("tolerance {tol} must be positive")));
    }
    let max_sweeps = max_sweeps_per_eig.max(1);
    let n = c.order();
    let mut stats = QrStats::default();
    if n == 0 {
        return Ok((Spectrum::default(), stats));
    }
    let mut h = GeneratorHessenberg::from_comrade(c);
    let mut eig = vec![Complex64::new(f64::NAN, f64::NAN); n];
    let mut iters = vec![0usize; n];
    let mut found = 0usize;

    let mut hi = n - 1;
    let mut its = 0usize;
    let mut exceptional = 0usize;
    loop {
        let mut lo = hi;
        while lo > 0 && !h.negligible(lo - 1, tol) {
            lo -= 1;
        }
        if lo > 0 {
            h.beta[lo - 1] = Complex64::new(0.0, 0.0);
        }

        let deflated = if lo == hi {
            eig[hi] = h.gamma[hi];
            iters[hi] = its;
            1
        } else if lo + 1 == hi {
            let a = h.gamma[lo];
            let b = h.superdiag(lo);
            let cc = h.beta[lo];
            let d = h.gamma[hi];
            let (near, far) = eig2x2(a, b, cc, d);
            eig[hi] = near;
            eig[lo] = far;
            iters[hi] = its;
            iters[lo] = its;
            2
        } else {
            0
        };

        if deflated > 0 {
            found += deflated;
            if lo == 0 {
                break;
            }
            hi = lo - 1;
            its = 0;
            exceptional = 0;
            continue;
        }

        h.lo = lo;
        h.hi = hi;
        let shift = if its > 0 && its % max_sweeps == 0 {
            if exceptional == MAX_EXCEPTIONAL_ROUNDS {
                let partial = Spectrum::new(
                    eig.iter().copied().filter(|z| !z.re.is_nan()).collect(),
                    iters
                        .iter()
                        .zip(&eig)
                        .filter(|(_, z)| !z.re.is_nan())
                        .map(|(&i, _)| i)
                        .collect(),
                );
                return Err(Error::NonConvergence {
                    partial: Box::new(partial),
                    found,
                    block: (lo, hi),
                });
            }
            exceptional += 1;
            stats.exceptional_shifts += 1;
            h.gamma[hi] + EXCEPTIONAL_SHIFT * h.beta[hi - 1].norm()
        } else {
            h.wilkinson_shift()
        };
        h.qr_step(shift);
        its += 1;
        stats.qr_steps += 1;
        stats.rotations += hi - lo;
    }

    Ok((Spectrum::new(eig, iters), stats))
}
