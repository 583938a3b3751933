//! Eigenvalue condition numbers `1 / |y^* x|` from unit left and right
//! eigenvectors, obtained by inverse iteration on the Hessenberg form.

use num_complex::Complex64;

use super::{hessenberg_reduce, DenseMatrix};
use crate::spectrum::Spectrum;

const INVERSE_STEPS: usize = 2;
const SINGULAR_NUDGE: f64 = 1e-10;

/// LU of a shifted Hessenberg matrix with adjacent-row pivoting.
struct HessenbergLu {
    u: DenseMatrix<Complex64>,
    mult: Vec<Complex64>,
    swapped: Vec<bool>,
}

impl HessenbergLu {
    /// Returns `None` if an exact zero pivot occurs.
    fn factor(h: &DenseMatrix<Complex64>, shift: Complex64, floor: f64) -> Option<Self> {
        let n = h.order();
        let mut u = h.clone();
        for i in 0..n {
            u[(i, i)] -= shift;
        }
        let mut mult = vec![Complex64::new(0.0, 0.0); n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for k in 0..n.saturating_sub(1) {
            if u[(k + 1, k)].norm() > u[(k, k)].norm() {
                u.swap_rows(k, k + 1);
                swapped[k] = true;
            }
            let piv = u[(k, k)];
            if piv == Complex64::new(0.0, 0.0) {
                return None;
            }
            let l = u[(k + 1, k)] / piv;
            mult[k] = l;
            for j in k..n {
                let t = u[(k, j)];
                u[(k + 1, j)] -= l * t;
            }
            u[(k + 1, k)] = Complex64::new(0.0, 0.0);
        }
        if n > 0 && u[(n - 1, n - 1)] == Complex64::new(0.0, 0.0) {
            return None;
        }
        // a near-singular pivot is expected at an eigenvalue; keep it finite
        for k in 0..n {
            let p = u[(k, k)];
            if p.norm() < floor {
                u[(k, k)] = p / p.norm() * floor;
            }
        }
        Some(Self { u, mult, swapped })
    }

    fn solve(&self, b: &mut [Complex64]) {
        let n = b.len();
        for k in 0..n.saturating_sub(1) {
            if self.swapped[k] {
                b.swap(k, k + 1);
            }
            let t = b[k];
            b[k + 1] -= self.mult[k] * t;
        }
        for i in (0..n).rev() {
            let mut s = b[i];
            for j in i + 1..n {
                s -= self.u[(i, j)] * b[j];
            }
            b[i] = s / self.u[(i, i)];
        }
    }

    fn solve_adjoint(&self, b: &mut [Complex64]) {
        let n = b.len();
        for i in 0..n {
            let mut s = b[i];
            for j in 0..i {
                s -= self.u[(j, i)].conj() * b[j];
            }
            b[i] = s / self.u[(i, i)].conj();
        }
        for k in (0..n.saturating_sub(1)).rev() {
            let t = b[k + 1];
            b[k] -= self.mult[k].conj() * t;
            if self.swapped[k] {
                b.swap(k, k + 1);
            }
        }
    }
}

fn normalize(v: &mut [Complex64]) {
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if norm > 0.0 && norm.is_finite() {
        v.iter_mut().for_each(|z| *z /= norm);
    }
}

fn condition_at(h: &DenseMatrix<Complex64>, lambda: Complex64, norm: f64) -> f64 {
    let n = h.order();
    let floor = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
    let lu = HessenbergLu::factor(h, lambda, floor)
        .or_else(|| HessenbergLu::factor(h, lambda + SINGULAR_NUDGE * norm, floor));
    let Some(lu) = lu else {
        return f64::INFINITY;
    };
    let mut x = vec![Complex64::new(1.0, 0.0); n];
    let mut y = x.clone();
    for _ in 0..INVERSE_STEPS {
        lu.solve(&mut x);
        normalize(&mut x);
        lu.solve_adjoint(&mut y);
        normalize(&mut y);
    }
    let dot: Complex64 = y.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
    1.0 / dot.norm()
}

/// Condition number of each eigenvalue in `spectrum` as an eigenvalue of
/// `m`, in the same order.
pub fn condition_numbers(m: &DenseMatrix<f64>, spectrum: &Spectrum) -> Vec<f64> {
    let h = hessenberg_reduce(m, false).to_complex();
    let norm = m.frobenius_norm();
    spectrum
        .eigenvalues
        .iter()
        .map(|&z| condition_at(&h, z, norm))
        .collect()
}
