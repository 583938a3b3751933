use crate::dd::DoubleDouble;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 60;

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL in
/// double-double, ascending.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if offdiag.len() != n.saturating_sub(1) {
        return Err(Error::DimensionMismatch {
            expected: n.saturating_sub(1),
            found: offdiag.len(),
        });
    }
    let mut d: Vec<DoubleDouble> = diag.iter().map(|&v| DoubleDouble::from_f64(v)).collect();
    let mut e: Vec<DoubleDouble> = offdiag.iter().map(|&v| DoubleDouble::from_f64(v)).collect();
    e.push(DoubleDouble::ZERO);
    let eps = DoubleDouble::from_f64(DoubleDouble::EPSILON);
    let two = DoubleDouble::from_f64(2.0);
    let one = DoubleDouble::ONE;
    let hypot = |a: DoubleDouble, b: DoubleDouble| (a * a + b * b).sqrt();

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS {
                return Err(Error::InvalidParameters(format!(
                    "tridiagonal QL failed to converge at index {l}"
                )));
            }
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = hypot(g, one);
            let signed_r = if g < DoubleDouble::ZERO { -r } else { r };
            g = d[m] - d[l] + e[l] / (g + signed_r);
            let (mut s, mut c, mut p) = (one, one, DoubleDouble::ZERO);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == DoubleDouble::ZERO {
                    d[i + 1] -= p;
                    e[m] = DoubleDouble::ZERO;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = DoubleDouble::ZERO;
        }
    }
    let mut out: Vec<f64> = d.iter().map(|v| v.to_f64()).collect();
    out.sort_by(f64::total_cmp);
    Ok(out)
}

/// Zeros of the generalized Laguerre polynomial `L_n^{(alpha)}`, ascending,
/// from its symmetric Jacobi matrix.
pub fn laguerre_nodes(n: usize, alpha: f64) -> Result<Vec<f64>> {
    if !(alpha.is_finite() && alpha > -1.0) {
        return Err(Error::InvalidParameters(format!(
            "Laguerre parameter must exceed -1, got {alpha}"
        )));
    }
    let diag: Vec<f64> = (0..n).map(|i| (2 * i + 1) as f64 + alpha).collect();
    let offdiag: Vec<f64> = (1..n)
        .map(|i| {
            let i = DoubleDouble::from_f64(i as f64);
            (i * (i + DoubleDouble::from_f64(alpha))).sqrt().to_f64()
        })
        .collect();
    symmetric_tridiagonal_eigenvalues(&diag, &offdiag)
}
