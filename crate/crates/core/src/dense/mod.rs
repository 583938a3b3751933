//! Dense reference solvers used as oracles and for timing comparisons.

mod condition;
mod laguerre;
mod matrix;
mod qr;

pub use condition::condition_numbers;
pub use laguerre::{laguerre_nodes, symmetric_tridiagonal_eigenvalues};
pub use matrix::DenseMatrix;
pub use qr::{balance, dense_eigenvalues_in, dense_qr_eigenvalues, hessenberg_eigenvalues, hessenberg_reduce};
