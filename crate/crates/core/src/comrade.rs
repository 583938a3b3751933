//! Diagonal similarity scaling of `X` into the comrade matrix
//! `C = T + w e_1^T`, with `T` symmetric tridiagonal and `w` a spike in the
//! first column.
//!
//! Scaling by `D = diag(delta)` makes every off-diagonal pair of `D X D^{-1}`
//! equal to `-sqrt(a_hat * c_hat)`. A further similarity by
//! `S = diag(1, -1, 1, ...)` flips those pairs to the positive root, so
//! `C = S D X D^{-1} S`; the flip multiplies spike entry `i` by `(-1)^i`.
//!
//! The `(1, 0)` entry of `X` is not part of a symmetric pair, which leaves
//! `delta_1` free. It is chosen as `sqrt((1+alpha)(1+kappa))` so that every
//! off-diagonal follows `sqrt((i+alpha)(i+kappa))` and the spike vanishes
//! whenever `alpha * kappa = 0`.

use crate::dd::DoubleDouble;
use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::pencil::SpikedTridiagonal;
use crate::recurrence::Parameters;

#[derive(Clone, Debug, PartialEq)]
pub struct ComradeMatrix {
    /// `v_0, b_1 .. b_{n-1}`.
    pub diag: Vec<f64>,
    /// Positive symmetric off-diagonal of `T`.
    pub offdiag: Vec<f64>,
    /// `w`, with `w[0] = 0`.
    pub spike: Vec<f64>,
    /// The similarity factors `delta`.
    pub scaling: Vec<f64>,
}

/// `delta_0 = 1`, `delta_1 = sqrt((1+alpha)(1+kappa))` (or `1` when that
/// vanishes), `delta_{k} = delta_{k-1} sqrt((k+alpha)(k+kappa)) / k` for
/// `k >= 2`. Accumulated in double-double so each factor is correctly
/// rounded.
pub fn scaling_factors(n: usize, alpha: f64, kappa: f64) -> Vec<f64> {
    let a = DoubleDouble::from_f64(alpha);
    let k = DoubleDouble::from_f64(kappa);
    let mut out = Vec::with_capacity(n);
    let mut delta = DoubleDouble::ONE;
    for i in 0..n {
        if i >= 1 {
            let fi = DoubleDouble::from_f64(i as f64);
            let prod = (fi + a) * (fi + k);
            if i == 1 {
                if prod.hi > 0.0 {
                    delta = prod.sqrt();
                }
            } else {
                delta *= prod.sqrt() / fi;
            }
        }
        out.push(delta.to_f64());
    }
    out
}

#[inline]
fn parity(i: usize) -> f64 {
    if i % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_finite(c: ComradeMatrix) -> Result<ComradeMatrix> {
    if c.spike.iter().chain(&c.offdiag).all(|v| v.is_finite()) {
        Ok(c)
    } else {
        Err(Error::InvalidParameters(
            "scaling factors overflow double precision".to_string(),
        ))
    }
}

/// Symmetrizes the entries of an explicit `X`.
pub fn symmetrize(x: &SpikedTridiagonal, params: &Parameters) -> Result<ComradeMatrix> {
    x.check_shape()?;
    let n = x.order();
    if n != params.n() {
        return Err(Error::DimensionMismatch {
            expected: params.n(),
            found: n,
        });
    }
    let scaling = scaling_factors(n, params.alpha(), params.kappa());

    let mut offdiag = Vec::with_capacity(n.saturating_sub(1));
    if n > 1 {
        offdiag.push(-x.superdiag[0] / scaling[1]);
    }
    for m in 1..n.saturating_sub(1) {
        offdiag.push((x.superdiag[m] * x.subdiag[m - 1]).sqrt());
    }

    let mut spike = vec![0.0; n];
    if n > 1 {
        spike[1] = -scaling[1] * x.spike[1] - offdiag[0];
    }
    for i in 2..n {
        spike[i] = parity(i) * scaling[i] * x.spike[i];
    }

    check_finite(ComradeMatrix {
        diag: x.diag.clone(),
        offdiag,
        spike,
        scaling,
    })
}

/// Builds `C` from closed forms without forming `X`.
pub fn comrade_direct(params: &Parameters) -> Result<ComradeMatrix> {
    params.require_degree()?;
    let n = params.n();
    let (alpha, kappa) = (params.alpha(), params.kappa());
    let ak = alpha * kappa;
    let scaling = scaling_factors(n, alpha, kappa);

    let mut diag = Vec::with_capacity(n);
    diag.push((alpha + 1.0) * (kappa + 1.0));
    for m in 1..n {
        diag.push((2 * m + 1) as f64 + alpha + kappa);
    }

    let offdiag: Vec<f64> = (1..n)
        .map(|i| ((i as f64 + alpha) * (i as f64 + kappa)).sqrt())
        .collect();

    let mut spike = vec![0.0; n];
    for i in 1..n {
        spike[i] = parity(i) * scaling[i] * ak / (i + 1) as f64;
    }
    // With alpha or kappa at -1 the leading off-diagonal vanishes and
    // delta_1 = 1, so the (1, 0) entry no longer cancels against T.
    if n > 1 && offdiag[0] == 0.0 {
        spike[1] = 1.0 - ak / 2.0;
    }

    check_finite(ComradeMatrix {
        diag,
        offdiag,
        spike,
        scaling,
    })
}

impl ComradeMatrix {
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DenseMatrix<f64> {
        let n = self.order();
        let mut c = DenseMatrix::zeros(n);
        for i in 0..n {
            c[(i, i)] = self.diag[i];
            if i + 1 < n {
                c[(i, i + 1)] = self.offdiag[i];
                c[(i + 1, i)] = self.offdiag[i];
            }
        }
        for i in 0..n {
            c[(i, 0)] += self.spike[i];
        }
        c
    }

    /// The tridiagonal part `T` alone.
    pub fn symmetric_part_dense(&self) -> DenseMatrix<f64> {
        ComradeMatrix {
            spike: vec![0.0; self.order()],
            ..self.clone()
        }
        .to_dense()
    }

    pub fn trace(&self) -> f64 {
        self.diag.iter().sum()
    }
}

pub fn comrade_to_dense(c: &ComradeMatrix) -> DenseMatrix<f64> {
    c.to_dense()
}
