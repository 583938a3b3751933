//! Computations behind the experiment commands: solver selection, spectrum
//! classification, accuracy/separation/growth records and timing helpers.
//! Input parsing and output formatting live in the CLI crate.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use crate::comrade::comrade_direct;
use crate::dd::DoubleDouble;
use crate::dense::{condition_numbers, dense_eigenvalues_in, dense_qr_eigenvalues};
use crate::error::{Error, Result};
use crate::pencil::{build_x, build_x_in};
use crate::recurrence::{scaled_residual, Parameters};
use crate::scalar::Precision;
use crate::spectrum::{matched_distance, Spectrum};
use crate::structured_qr::{self, DEFAULT_MAX_SWEEPS, DEFAULT_TOL};

/// Relative threshold on `|Im lambda|` below which an eigenvalue counts as
/// real; scaled by `max(1, max |lambda|)`.
pub const REAL_TOLERANCE: f64 = 1e-10;

/// Largest order for which the double-double dense oracle runs without an
/// explicit opt-in.
pub const ORACLE_LIMIT: usize = 400;

/// Unit of the double-precision bound formulas, `2^-52`.
pub const BOUND_EPSILON: f64 = f64::EPSILON;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// Comrade matrix and structured QR, O(n^2).
    Fast,
    /// Dense QR on `X` in double precision.
    Dense,
    /// Dense QR on `X` in double-double.
    DenseDd,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Fast => "fast",
            Algorithm::Dense => "dense",
            Algorithm::DenseDd => "dense-dd",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(Algorithm::Fast),
            "dense" => Ok(Algorithm::Dense),
            "dense-dd" => Ok(Algorithm::DenseDd),
            _ => Err(Error::InvalidParameters(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Deflation tolerance of the structured solver.
    pub tol: f64,
    /// Balance before the dense solvers.
    pub balance: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: DEFAULT_TOL,
            balance: false,
        }
    }
}

/// Zeros of `L_n` with the selected solver.
pub fn solve(params: &Parameters, algorithm: Algorithm, opts: SolveOptions) -> Result<Spectrum> {
    match algorithm {
        Algorithm::Fast => {
            structured_qr::eigenvalues(&comrade_direct(params)?, opts.tol, DEFAULT_MAX_SWEEPS)
        }
        Algorithm::Dense => {
            dense_qr_eigenvalues(&build_x(params)?.to_dense(), Precision::Double, opts.balance)
        }
        Algorithm::DenseDd => {
            dense_eigenvalues_in(&build_x_in::<DoubleDouble>(params)?.to_dense(), opts.balance)
        }
    }
}

/// Absolute threshold for "real" used by [`classify`].
pub fn real_threshold(spectrum: &Spectrum) -> f64 {
    REAL_TOLERANCE * spectrum.max_abs().max(1.0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct ClassifiedSpectrum {
    pub spectrum: Spectrum,
    pub all_real: bool,
    pub max_real: f64,
    pub min_real: f64,
    pub max_abs_imag: f64,
}

pub fn classify(spectrum: Spectrum) -> ClassifiedSpectrum {
    let max_abs_imag = spectrum.max_abs_imag();
    let all_real = max_abs_imag <= real_threshold(&spectrum);
    let (min_real, max_real) = spectrum
        .eigenvalues
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), z| {
            (lo.min(z.re), hi.max(z.re))
        });
    ClassifiedSpectrum {
        spectrum,
        all_real,
        max_real,
        min_real,
        max_abs_imag,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ZeroRow {
    pub index: usize,
    pub re: f64,
    pub im: f64,
    pub residual: f64,
}

/// Sorted zeros with their double-double recurrence residuals.
pub fn zero_rows(params: &Parameters, spectrum: &Spectrum) -> Result<Vec<ZeroRow>> {
    spectrum
        .eigenvalues
        .iter()
        .enumerate()
        .map(|(index, &z)| {
            Ok(ZeroRow {
                index,
                re: z.re,
                im: z.im,
                residual: scaled_residual(params, z)?,
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AccuracyRow {
    pub alpha: f64,
    pub err_fast: f64,
    pub err_dense: f64,
    /// `||C||_F eps max cond_C(lambda)`.
    pub bound_sym: f64,
    /// `||X||_F eps max cond_X(lambda)`.
    pub bound_unsym: f64,
}

/// Errors of the double-precision solvers against the double-double oracle
/// at `alpha = kappa`, and the first-order bounds for both matrices.
pub fn accuracy_row(n: usize, alpha: f64, opts: SolveOptions) -> Result<AccuracyRow> {
    let params = Parameters::new(n, alpha, alpha)?;
    let oracle = solve(&params, Algorithm::DenseDd, opts)?;
    let fast = solve(&params, Algorithm::Fast, opts)?;
    let dense = solve(&params, Algorithm::Dense, opts)?;

    let bound = |m: &crate::dense::DenseMatrix<f64>| {
        let worst = condition_numbers(m, &oracle).into_iter().fold(0.0, f64::max);
        m.frobenius_norm() * BOUND_EPSILON * worst
    };
    let c = comrade_direct(&params)?.to_dense();
    let x = build_x(&params)?.to_dense();
    Ok(AccuracyRow {
        alpha,
        err_fast: matched_distance(&fast.eigenvalues, &oracle.eigenvalues),
        err_dense: matched_distance(&dense.eigenvalues, &oracle.eigenvalues),
        bound_sym: bound(&c),
        bound_unsym: bound(&x),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationSettings {
    pub kappa_max: f64,
    pub scan_step: f64,
    pub width: f64,
}

impl Default for SeparationSettings {
    fn default() -> Self {
        Self {
            kappa_max: 8.0,
            scan_step: 0.25,
            width: 1e-3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparationRow {
    pub alpha: f64,
    /// `None` when no all-real to complex transition lies in the bracket.
    pub kappa_boundary: Option<f64>,
}

/// Whether all zeros at `(n, alpha, kappa)` are real, by the fast solver.
pub fn all_real(n: usize, alpha: f64, kappa: f64, opts: SolveOptions) -> Result<bool> {
    let params = Parameters::new(n, alpha, kappa)?;
    Ok(classify(solve(&params, Algorithm::Fast, opts)?).all_real)
}

/// Scans `kappa` from `0` to `kappa_max` for the first change from all-real
/// to some-complex, then bisects to the requested width. The reported
/// boundary is the midpoint of the final bracket, so it lies in
/// `(0, kappa_max]`.
pub fn separation_row(
    n: usize,
    alpha: f64,
    settings: SeparationSettings,
    opts: SolveOptions,
) -> Result<SeparationRow> {
    let SeparationSettings {
        kappa_max,
        scan_step,
        width,
    } = settings;
    if !(scan_step > 0.0 && width > 0.0 && kappa_max > 0.0) {
        return Err(Error::InvalidParameters(
            "separation bracket, step and width must be positive".to_string(),
        ));
    }
    let steps = (kappa_max / scan_step).round() as usize;
    let mut last_real: Option<f64> = None;
    let mut bracket = None;
    for k in 0..=steps {
        let kappa = (k as f64 * scan_step).min(kappa_max);
        if all_real(n, alpha, kappa, opts)? {
            last_real = Some(kappa);
        } else if let Some(lo) = last_real {
            bracket = Some((lo, kappa));
            break;
        }
    }
    let Some((mut lo, mut hi)) = bracket else {
        return Ok(SeparationRow {
            alpha,
            kappa_boundary: None,
        });
    };
    while hi - lo > width {
        let mid = 0.5 * (lo + hi);
        if all_real(n, alpha, mid, opts)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(SeparationRow {
        alpha,
        kappa_boundary: Some(0.5 * (lo + hi)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthRow {
    pub n: usize,
    pub alpha: f64,
    pub kappa: f64,
    pub max_real: f64,
    pub min_real: f64,
    pub max_abs_imag: f64,
}

pub fn growth_row(n: usize, alpha: f64, kappa: f64, opts: SolveOptions) -> Result<GrowthRow> {
    let params = Parameters::new(n, alpha, kappa)?;
    let c = classify(solve(&params, Algorithm::Fast, opts)?);
    Ok(GrowthRow {
        n,
        alpha,
        kappa,
        max_real: c.max_real,
        min_real: c.min_real,
        max_abs_imag: c.max_abs_imag,
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimingRow {
    pub n: usize,
    pub seconds_fast: f64,
    pub seconds_dense: f64,
}

/// Median wall time of `reps` runs after one discarded warm-up run.
pub fn median_seconds<F: FnMut() -> Result<()>>(reps: usize, mut f: F) -> Result<f64> {
    f()?;
    let mut times = Vec::with_capacity(reps.max(1));
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        f()?;
        times.push(start.elapsed().as_secs_f64());
    }
    times.sort_by(f64::total_cmp);
    let m = times.len();
    Ok(if m % 2 == 1 {
        times[m / 2]
    } else {
        0.5 * (times[m / 2 - 1] + times[m / 2])
    })
}

pub fn time_solver(params: &Parameters, algorithm: Algorithm, reps: usize) -> Result<f64> {
    median_seconds(reps, || solve(params, algorithm, SolveOptions::default()).map(|_| ()))
}

pub fn timing_row(n: usize, alpha: f64, kappa: f64, reps: usize) -> Result<TimingRow> {
    if reps < 3 {
        return Err(Error::InvalidParameters(format!(
            "timing needs at least 3 repetitions, got {reps}"
        )));
    }
    let params = Parameters::new(n, alpha, kappa)?;
    Ok(TimingRow {
        n,
        seconds_fast: time_solver(&params, Algorithm::Fast, reps)?,
        seconds_dense: time_solver(&params, Algorithm::Dense, reps)?,
    })
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(x: &[f64], y: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = x.iter().zip(y).map(|(a, b)| (a.ln(), b.ln())).collect();
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
