//! Unstructured reference solver: optional balancing, Householder reduction
//! to upper Hessenberg form, then complex single-shift QR with Wilkinson
//! shifts. Generic over the working precision.

use num_complex::Complex;

use super::DenseMatrix;
use crate::dd::DoubleDouble;
use crate::error::{Error, Result};
use crate::scalar::{cabs, cabs1, eig2x2, to_c64, Precision, Real};
use crate::spectrum::Spectrum;
use crate::structured_qr::{DEFAULT_MAX_SWEEPS, EXCEPTIONAL_SHIFT};

const MAX_EXCEPTIONAL_ROUNDS: usize = 3;

/// Power-of-two diagonal equilibration of row and column 1-norms
/// (similarity, so eigenvalues are preserved exactly).
pub fn balance<T: Real>(m: &DenseMatrix<T>) -> DenseMatrix<T> {
    const RADIX: f64 = 2.0;
    let n = m.order();
    let mut a = m.clone();
    let radix = T::from_f64(RADIX);
    let sqrdx = radix * radix;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = T::zero();
            let mut c = T::zero();
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c == T::zero() || r == T::zero() {
                continue;
            }
            let s = c + r;
            let mut f = T::one();
            let mut g = r / radix;
            while c < g {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while c > g {
                f /= radix;
                c /= sqrdx;
            }
            if (c + r) / f < T::from_f64(0.95) * s {
                done = false;
                let inv = T::one() / f;
                for j in 0..n {
                    a[(i, j)] *= inv;
                    a[(j, i)] *= f;
                }
            }
        }
    }
    a
}

/// Similar upper Hessenberg matrix via Householder reflections, optionally
/// preceded by [`balance`]. Columns already in Hessenberg form are left
/// untouched.
pub fn hessenberg_reduce<T: Real>(m: &DenseMatrix<T>, balanced: bool) -> DenseMatrix<T> {
    let mut a = if balanced { balance(m) } else { m.clone() };
    let n = a.order();
    if n < 3 {
        return a;
    }
    let mut v = vec![T::zero(); n];
    for k in 0..n - 2 {
        let mut tail = T::zero();
        for i in k + 2..n {
            tail += a[(i, k)] * a[(i, k)];
        }
        if tail == T::zero() {
            continue;
        }
        let x0 = a[(k + 1, k)];
        let norm = (x0 * x0 + tail).sqrt();
        let alpha = if x0 < T::zero() { norm } else { -norm };
        v[k + 1] = x0 - alpha;
        for i in k + 2..n {
            v[i] = a[(i, k)];
        }
        let vtv = v[k + 1] * v[k + 1] + tail;
        let beta = T::from_f64(2.0) / vtv;
        for j in k..n {
            let mut s = T::zero();
            for i in k + 1..n {
                s += v[i] * a[(i, j)];
            }
            s *= beta;
            for i in k + 1..n {
                let t = a[(i, j)] - s * v[i];
                a[(i, j)] = t;
            }
        }
        for i in 0..n {
            let mut s = T::zero();
            for j in k + 1..n {
                s += a[(i, j)] * v[j];
            }
            s *= beta;
            for j in k + 1..n {
                let t = a[(i, j)] - s * v[j];
                a[(i, j)] = t;
            }
        }
        a[(k + 1, k)] = alpha;
        for i in k + 2..n {
            a[(i, k)] = T::zero();
        }
    }
    a
}

#[derive(Clone, Copy)]
struct Rot<T> {
    c: T,
    s: Complex<T>,
}

impl<T: Real> Rot<T> {
    fn zeroing(a: Complex<T>, b: Complex<T>) -> Self {
        let zero = T::zero();
        if b.re == zero && b.im == zero {
            return Self { c: T::one(), s: b };
        }
        let na = cabs(a);
        let nb = cabs(b);
        if na == zero {
            return Self {
                c: zero,
                s: b.conj().unscale(nb),
            };
        }
        let r = T::hypot(na, nb);
        Self {
            c: na / r,
            s: (a.unscale(na) * b.conj()).unscale(r),
        }
    }
}

/// Eigenvalues of a complex upper Hessenberg matrix, with the number of QR
/// steps spent on each.
pub fn hessenberg_eigenvalues<T: Real>(
    mut h: DenseMatrix<Complex<T>>,
    max_sweeps_per_eig: usize,
) -> Result<(Vec<Complex<T>>, Vec<usize>)> {
    let n = h.order();
    let nan = Complex::new(T::from_f64(f64::NAN), T::from_f64(f64::NAN));
    let mut eig = vec![nan; n];
    let mut iters = vec![0usize; n];
    if n == 0 {
        return Ok((eig, iters));
    }
    let eps = T::from_f64(T::EPSILON);
    let zero = Complex::new(T::zero(), T::zero());
    let max_sweeps = max_sweeps_per_eig.max(1);
    let mut rots: Vec<Rot<T>> = Vec::with_capacity(n);

    let mut hi = n - 1;
    let mut its = 0usize;
    let mut exceptional = 0usize;
    let mut found = 0usize;
    loop {
        let mut lo = hi;
        while lo > 0 {
            let sub = cabs1(h[(lo, lo - 1)]);
            let neighborhood = cabs1(h[(lo - 1, lo - 1)]) + cabs1(h[(lo, lo)]);
            if sub == T::zero() || sub <= eps * neighborhood {
                break;
            }
            lo -= 1;
        }
        if lo > 0 {
            h[(lo, lo - 1)] = zero;
        }

        let deflated = if lo == hi {
            eig[hi] = h[(hi, hi)];
            iters[hi] = its;
            1
        } else if lo + 1 == hi {
            let (near, far) = eig2x2(h[(lo, lo)], h[(lo, hi)], h[(hi, lo)], h[(hi, hi)]);
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

        let mu = if its > 0 && its % max_sweeps == 0 {
            if exceptional == MAX_EXCEPTIONAL_ROUNDS {
                let done: Vec<_> = eig
                    .iter()
                    .zip(&iters)
                    .filter(|(z, _)| !z.re.to_f64().is_nan())
                    .map(|(&z, &i)| (to_c64(z), i))
                    .collect();
                let partial =
                    Spectrum::new(done.iter().map(|p| p.0).collect(), done.iter().map(|p| p.1).collect());
                return Err(Error::NonConvergence {
                    partial: Box::new(partial),
                    found,
                    block: (lo, hi),
                });
            }
            exceptional += 1;
            let ex = Complex::new(T::from_f64(EXCEPTIONAL_SHIFT.re), T::from_f64(EXCEPTIONAL_SHIFT.im));
            h[(hi, hi)] + ex.scale(cabs(h[(hi, hi - 1)]))
        } else {
            eig2x2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]).0
        };

        // explicit step on the active block: H - mu I = QR, H <- RQ + mu I
        for k in lo..=hi {
            h[(k, k)] = h[(k, k)] - mu;
        }
        rots.clear();
        for k in lo..hi {
            let rot = Rot::zeroing(h[(k, k)], h[(k + 1, k)]);
            let sc = rot.s.conj();
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x.scale(rot.c) + rot.s * y;
                h[(k + 1, j)] = y.scale(rot.c) - sc * x;
            }
            h[(k + 1, k)] = zero;
            rots.push(rot);
        }
        for (idx, rot) in rots.iter().enumerate() {
            let k = lo + idx;
            let sc = rot.s.conj();
            for i in lo..=(k + 1) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x.scale(rot.c) + y * sc;
                h[(i, k + 1)] = y.scale(rot.c) - x * rot.s;
            }
        }
        for k in lo..=hi {
            h[(k, k)] = h[(k, k)] + mu;
        }
        its += 1;
    }
    Ok((eig, iters))
}

/// Eigenvalues of a real matrix in working precision `T`.
pub fn dense_eigenvalues_in<T: Real>(m: &DenseMatrix<T>, balanced: bool) -> Result<Spectrum> {
    let h = hessenberg_reduce(m, balanced).to_complex();
    let (eig, iters) = hessenberg_eigenvalues(h, DEFAULT_MAX_SWEEPS)?;
    Ok(Spectrum::new(eig.into_iter().map(to_c64).collect(), iters))
}

/// All eigenvalues of `m`, O(n^3).
pub fn dense_qr_eigenvalues(
    m: &DenseMatrix<f64>,
    precision: Precision,
    balanced: bool,
) -> Result<Spectrum> {
    if m.order() == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    match precision {
        Precision::Double => dense_eigenvalues_in(m, balanced),
        Precision::DoubleDouble => dense_eigenvalues_in(&m.map(DoubleDouble::from_f64), balanced),
    }
}
