//! Zeros of the hypergeometric polynomials `2F2(-n, 1; alpha+1, kappa+1; x)`.
//!
//! The polynomials satisfy a four-term recurrence, which linearizes into a
//! banded pencil `x B - A`. `B^{-1} A` is tridiagonal plus a spike in the
//! first column; a diagonal similarity turns it into a comrade matrix
//! (symmetric tridiagonal plus rank one), whose eigenvalues are found in
//! O(n^2) by a QR iteration on generators.
//!
//! ```
//! use comrade_core::{comrade_direct, eigenvalues_default, Parameters};
//!
//! let params = Parameters::new(2, 0.0, 0.0).unwrap();
//! let zeros = eigenvalues_default(&comrade_direct(&params).unwrap()).unwrap();
//! assert!((zeros.eigenvalues[0].re - (2.0 - 2f64.sqrt())).abs() < 1e-14);
//! ```

pub mod comrade;
pub mod dd;
pub mod dense;
pub mod error;
pub mod experiments;
pub mod pencil;
pub mod recurrence;
pub mod scalar;
pub mod spectrum;
pub mod structured_qr;

pub use comrade::{comrade_direct, comrade_to_dense, scaling_factors, symmetrize, ComradeMatrix};
pub use dd::DoubleDouble;
pub use dense::{
    condition_numbers, dense_qr_eigenvalues, hessenberg_reduce, laguerre_nodes, DenseMatrix,
};
pub use error::{Error, Result};
pub use pencil::{apply_b_inverse, build_pencil, build_x, x_to_dense, BandedPencil, SpikedTridiagonal};
pub use recurrence::{
    eval_recurrence, eval_series, pochhammer, recurrence_coefficients, scaled_residual,
    CoefficientSet, Parameters, RecurrenceValue,
};
pub use scalar::{Precision, Real};
pub use spectrum::{matched_distance, Spectrum};
pub use structured_qr::{eigenvalues, eigenvalues_default, GeneratorHessenberg, Givens, QrStats};

pub use num_complex::Complex64;
