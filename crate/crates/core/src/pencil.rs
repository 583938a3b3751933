//! The banded pencil `x B - A` whose generalized eigenvalues are the zeros of
//! `L_n`, and the closed form of `X = B^{-1} A`: a tridiagonal matrix with an
//! extra spike in its first column.
//!
//! The pencil is only ever used to validate the closed form; no generalized
//! eigensolver is run on it.

use crate::dense::DenseMatrix;
use crate::error::{Error, Result};
use crate::recurrence::{CoefficientSet, Parameters};
use crate::scalar::Real;

/// `A` (lower bandwidth 2, upper bandwidth 1) and the lower bidiagonal `B`,
/// stored by diagonals.
#[derive(Clone, Debug, PartialEq)]
pub struct BandedPencil {
    /// Superdiagonal of `A`: `a_0 .. a_{n-2}`.
    pub a_diag: Vec<f64>,
    /// Diagonal of `A`: `b_0 .. b_{n-1}`.
    pub b_diag: Vec<f64>,
    /// Subdiagonal of `A`: `c_1 .. c_{n-1}`.
    pub c_diag: Vec<f64>,
    /// Second subdiagonal of `A`: `d_2 .. d_{n-1}`.
    pub d_diag: Vec<f64>,
    /// Diagonal of `B`: `e_0 .. e_{n-1}`.
    pub e_diag: Vec<f64>,
    /// Subdiagonal of `B`: `f_1 .. f_{n-1}`.
    pub f_diag: Vec<f64>,
}

pub fn build_pencil(params: &Parameters) -> Result<BandedPencil> {
    params.require_degree()?;
    let n = params.n();
    let co: Vec<CoefficientSet> = (0..n)
        .map(|i| CoefficientSet::compute(i, params.alpha(), params.kappa()))
        .collect();
    Ok(BandedPencil {
        a_diag: co[..n - 1].iter().map(|c| c.a).collect(),
        b_diag: co.iter().map(|c| c.b).collect(),
        c_diag: co[1..].iter().map(|c| c.c).collect(),
        d_diag: co.iter().skip(2).map(|c| c.d).collect(),
        e_diag: co.iter().map(|c| c.e).collect(),
        f_diag: co[1..].iter().map(|c| c.f).collect(),
    })
}

impl BandedPencil {
    pub fn order(&self) -> usize {
        self.b_diag.len()
    }

    pub fn a_dense(&self) -> DenseMatrix<f64> {
        let n = self.order();
        let mut a = DenseMatrix::zeros(n);
        for i in 0..n {
            a[(i, i)] = self.b_diag[i];
            if i + 1 < n {
                a[(i, i + 1)] = self.a_diag[i];
            }
            if i >= 1 {
                a[(i, i - 1)] = self.c_diag[i - 1];
            }
            if i >= 2 {
                a[(i, i - 2)] = self.d_diag[i - 2];
            }
        }
        a
    }

    pub fn b_dense(&self) -> DenseMatrix<f64> {
        let n = self.order();
        let mut b = DenseMatrix::zeros(n);
        for i in 0..n {
            b[(i, i)] = self.e_diag[i];
            if i >= 1 {
                b[(i, i - 1)] = self.f_diag[i - 1];
            }
        }
        b
    }

    /// `B z` in O(n).
    pub fn mul_b(&self, z: &[f64]) -> Vec<f64> {
        (0..z.len())
            .map(|i| {
                let mut s = self.e_diag[i] * z[i];
                if i >= 1 {
                    s += self.f_diag[i - 1] * z[i - 1];
                }
                s
            })
            .collect()
    }
}

/// `B^{-1} y = D^{-1} M y`: prefix sums divided by the (1-based) row index.
pub fn apply_b_inverse(y: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    y.iter()
        .enumerate()
        .map(|(i, &v)| {
            acc += v;
            acc / (i + 1) as f64
        })
        .collect()
}

/// `X = B^{-1} A` in compressed form.
///
/// The `(0, 0)` entry lives in both `spike[0]` and `diag[0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpikedTridiagonal<T = f64> {
    /// First column `v_0 .. v_{n-1}`.
    pub spike: Vec<T>,
    /// `v_0, b_1 .. b_{n-1}`.
    pub diag: Vec<T>,
    /// `a_0 .. a_{n-2}`.
    pub superdiag: Vec<T>,
    /// Entries `(i, i-1)` for `i = 2 .. n-1`, that is `c_2 .. c_{n-1}`.
    pub subdiag: Vec<T>,
}

/// Closed form of `B^{-1} A` evaluated in the working precision `T`.
pub fn build_x_in<T: Real>(params: &Parameters) -> Result<SpikedTridiagonal<T>> {
    params.require_degree()?;
    let n = params.n();
    let one = T::one();
    let alpha = T::from_f64(params.alpha());
    let kappa = T::from_f64(params.kappa());
    let ak = alpha * kappa;
    let v0 = (alpha + one) * (kappa + one);

    let mut spike = Vec::with_capacity(n);
    spike.push(v0);
    if n > 1 {
        spike.push(ak / T::from_f64(2.0) - one);
    }
    for i in 2..n {
        spike.push(ak / T::from_usize(i + 1));
    }

    let mut diag = Vec::with_capacity(n);
    diag.push(v0);
    for m in 1..n {
        diag.push(T::from_usize(2 * m + 1) + alpha + kappa);
    }

    let superdiag = (0..n.saturating_sub(1))
        .map(|m| {
            let k = T::from_usize(m + 1);
            -((k + alpha) * (k + kappa)) / k
        })
        .collect();

    let subdiag = (2..n).map(|i| -T::from_usize(i)).collect();

    Ok(SpikedTridiagonal {
        spike,
        diag,
        superdiag,
        subdiag,
    })
}

pub fn build_x(params: &Parameters) -> Result<SpikedTridiagonal> {
    build_x_in::<f64>(params)
}

impl<T: Real> SpikedTridiagonal<T> {
    pub fn order(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DenseMatrix<T> {
        let n = self.order();
        let mut x = DenseMatrix::zeros(n);
        for i in 0..n {
            x[(i, i)] = self.diag[i];
            if i >= 1 {
                x[(i, 0)] = self.spike[i];
            }
            if i + 1 < n {
                x[(i, i + 1)] = self.superdiag[i];
            }
            if i >= 2 {
                x[(i, i - 1)] = self.subdiag[i - 2];
            }
        }
        x
    }

    pub(crate) fn check_shape(&self) -> Result<()> {
        let n = self.order();
        let ok = self.spike.len() == n
            && self.superdiag.len() == n.saturating_sub(1)
            && self.subdiag.len() == n.saturating_sub(2);
        if ok {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: n,
                found: self.spike.len(),
            })
        }
    }
}

pub fn x_to_dense(x: &SpikedTridiagonal) -> DenseMatrix<f64> {
    x.to_dense()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, a: f64, k: f64) -> Parameters {
        Parameters::new(n, a, k).unwrap()
    }

    fn rows(m: &DenseMatrix<f64>) -> Vec<Vec<f64>> {
        let n = m.order();
        (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect()
    }

    #[test]
    fn small_pencils() {
        let one = build_pencil(&p(1, 0.0, 0.0)).unwrap();
        assert_eq!(rows(&one.a_dense()), vec![vec![1.0]]);
        assert_eq!(rows(&one.b_dense()), vec![vec![1.0]]);

        let two = build_pencil(&p(2, 0.0, 0.0)).unwrap();
        assert_eq!(rows(&two.a_dense()), vec![vec![1.0, -1.0], vec![-3.0, 7.0]]);
        assert_eq!(rows(&two.b_dense()), vec![vec![1.0, 0.0], vec![-1.0, 2.0]]);
    }

    #[test]
    fn b_diagonal_is_index_plus_one() {
        let pen = build_pencil(&p(12, 0.3, 1.7)).unwrap();
        for (i, &e) in pen.e_diag.iter().enumerate() {
            assert_eq!(e, (i + 1) as f64);
        }
        assert!(pen.a_diag.iter().all(|&a| a < 0.0));
    }

    #[test]
    fn interior_columns_of_a_sum_to_zero() {
        let a = build_pencil(&p(10, 1.5, 0.5)).unwrap().a_dense();
        // columns whose full 4-entry band fits inside the matrix
        for j in 1..8 {
            let s: f64 = (0..10).map(|i| a[(i, j)]).sum();
            assert_eq!(s, 0.0, "column {j}");
        }
    }

    #[test]
    fn b_inverse_examples() {
        let z = apply_b_inverse(&[1.0, 0.0, 0.0]);
        assert_eq!(z, vec![1.0, 0.5, 1.0 / 3.0]);
        assert_eq!(apply_b_inverse(&[1.0, 1.0, 1.0]), vec![1.0, 1.0, 1.0]);
    }

    #[test]
    fn closed_form_small_cases() {
        assert_eq!(
            rows(&build_x(&p(2, 0.0, 0.0)).unwrap().to_dense()),
            vec![vec![1.0, -1.0], vec![-1.0, 3.0]]
        );
        assert_eq!(
            rows(&build_x(&p(3, 0.0, 0.0)).unwrap().to_dense()),
            vec![vec![1.0, -1.0, 0.0], vec![-1.0, 3.0, -2.0], vec![0.0, -2.0, 5.0]]
        );
        let x = build_x(&p(4, 2.0, 1.0)).unwrap();
        assert_eq!(x.to_dense().trace(), 30.0);
    }

    #[test]
    fn one_by_one() {
        let x = build_x(&p(1, 2.0, 3.0)).unwrap();
        assert_eq!(x.spike, vec![12.0]);
        assert!(x.superdiag.is_empty() && x.subdiag.is_empty());
        assert!(build_x(&p(0, 2.0, 3.0)).is_err());
    }

    #[test]
    fn sparsity_pattern() {
        let x = build_x(&p(20, 0.7, 1.3)).unwrap().to_dense();
        for i in 0..20 {
            for j in 0..20 {
                let structural = j == 0 || j + 1 >= i && j <= i + 1;
                if !structural {
                    assert_eq!(x[(i, j)], 0.0, "({i},{j})");
                }
            }
        }
    }

    #[test]
    fn negative_off_diagonals() {
        let x = build_x(&p(15, -0.9, 4.9)).unwrap();
        assert!(x.superdiag.iter().all(|&a| a < 0.0));
        assert!(x.subdiag.iter().all(|&c| c < 0.0));
    }
}
