use thiserror::Error;

use crate::spectrum::Spectrum;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// The leading recurrence coefficient vanished (alpha or kappa equal to
    /// -1); the matrix path still applies.
    #[error("recurrence coefficient a_{index} is zero; use the matrix formulation instead")]
    DegenerateRecurrence { index: usize },

    #[error("series undefined for alpha = {alpha}, kappa = {kappa} (lower parameter is a nonpositive integer)")]
    SeriesDomain { alpha: f64, kappa: f64 },

    #[error("QR iteration did not converge on active block [{}, {}] ({} of {} eigenvalues found)",
        block.0, block.1, found, partial.eigenvalues.len())]
    NonConvergence {
        partial: Box<Spectrum>,
        found: usize,
        block: (usize, usize),
    },

    #[error("index ({i}, {j}) outside active block [{lo}, {hi}]")]
    IndexOutOfRange {
        i: usize,
        j: usize,
        lo: usize,
        hi: usize,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
