//! Command-line front end: argument parsing, parameter grids, parallel
//! sweeps and CSV/JSON output for the experiment commands.

pub mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use comrade_core::experiments::{
    self, accuracy_row, growth_row, separation_row, timing_row, zero_rows, Algorithm,
    SeparationSettings, SolveOptions, ORACLE_LIMIT,
};
use comrade_core::{Error as CoreError, Parameters, Spectrum};

use output::{Format, Table};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    NonConvergence(String),
    #[error("refusing slow run: {0} (pass --allow-slow to proceed)")]
    RefusedSlow(String),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::NonConvergence(_) => 3,
            CliError::RefusedSlow(_) => 4,
            CliError::Io(_) => 1,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::NonConvergence { .. } => CliError::NonConvergence(e.to_string()),
            other => CliError::Config(other.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Inclusive arithmetic grid `start:step:stop`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub step: f64,
    pub stop: f64,
}

impl GridRange {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count).map(|k| self.start + k as f64 * self.step).collect()
    }
}

impl FromStr for GridRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [start, step, stop] = parts[..] else {
            return Err(format!("expected start:step:stop, got {s:?}"));
        };
        let num = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("{t:?}: {e}"));
        let r = GridRange {
            start: num(start)?,
            step: num(step)?,
            stop: num(stop)?,
        };
        if !(r.step > 0.0) || !r.start.is_finite() || !r.stop.is_finite() {
            return Err(format!("step must be positive and bounds finite in {s:?}"));
        }
        if r.stop < r.start {
            return Err(format!("empty range {s:?}"));
        }
        Ok(r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Fast,
    Dense,
    DenseDd,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Fast => Algorithm::Fast,
            AlgorithmArg::Dense => Algorithm::Dense,
            AlgorithmArg::DenseDd => Algorithm::DenseDd,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "comrade", version, about = "Zeros of 2F2(-n,1;alpha+1,kappa+1;x) and experiment sweeps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Zeros of one polynomial with recurrence residuals: index,re,im,residual
    Zeros(Common),
    /// Median wall time of the fast and dense solvers: n,seconds_fast,seconds_dense
    Timing(Common),
    /// Errors against the double-double oracle along alpha = kappa
    Accuracy(Common),
    /// Boundary in kappa between all-real and complex spectra, per alpha
    Separation(Common),
    /// Extreme real parts and largest imaginary part over an (n, alpha, kappa) grid
    Growth(Common),
    /// Eigenvalue scatter of one instance: re,im
    Spectrum(Common),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Polynomial degree
    #[arg(long)]
    pub n: Option<usize>,

    /// Comma-separated degrees
    #[arg(long, value_delimiter = ',')]
    pub n_list: Option<Vec<usize>>,

    /// Comma-separated alpha values
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub alpha: Option<Vec<f64>>,

    /// Comma-separated kappa values
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub kappa: Option<Vec<f64>>,

    /// Alpha grid start:step:stop (inclusive)
    #[arg(long, allow_hyphen_values = true)]
    pub alpha_range: Option<GridRange>,

    /// Kappa grid start:step:stop; for separation, step is the scan step and
    /// stop the upper end of the bracket
    #[arg(long, allow_hyphen_values = true)]
    pub kappa_range: Option<GridRange>,

    #[arg(long, value_enum, default_value_t = AlgorithmArg::Fast)]
    pub algorithm: AlgorithmArg,

    /// Deflation tolerance of the structured solver
    #[arg(long, default_value_t = comrade_core::structured_qr::DEFAULT_TOL)]
    pub tol: f64,

    /// Final bracket width of the separation bisection
    #[arg(long, default_value_t = 1e-3)]
    pub width: f64,

    /// Timed repetitions per solver (after one warm-up run)
    #[arg(long, default_value_t = 3)]
    pub reps: usize,

    /// Output file (stdout if omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Worker threads for grid sweeps
    #[arg(long, env = "COMRADE_THREADS")]
    pub threads: Option<usize>,

    /// Permit double-double dense runs above the size guard
    #[arg(long)]
    pub allow_slow: bool,

    /// Balance before the dense solvers
    #[arg(long)]
    pub balance: bool,
}

impl Common {
    fn validate(&self) -> CliResult<()> {
        if !(self.tol > 0.0) {
            return Err(CliError::Config(format!("--tol {} must be positive", self.tol)));
        }
        if !(self.width > 0.0) {
            return Err(CliError::Config(format!("--width {} must be positive", self.width)));
        }
        if self.threads == Some(0) {
            return Err(CliError::Config("--threads must be at least 1".to_string()));
        }
        if matches!(&self.n_list, Some(v) if v.is_empty()) {
            return Err(CliError::Config("--n-list is empty".to_string()));
        }
        Ok(())
    }

    fn options(&self) -> SolveOptions {
        SolveOptions {
            tol: self.tol,
            balance: self.balance,
        }
    }

    fn single_n(&self) -> CliResult<usize> {
        match (self.n, &self.n_list) {
            (Some(n), None) => Ok(n),
            (None, Some(v)) if v.len() == 1 => Ok(v[0]),
            (None, None) => Err(CliError::Config("--n is required".to_string())),
            _ => Err(CliError::Config("expected a single degree".to_string())),
        }
    }

    fn n_values(&self, default: &[usize]) -> Vec<usize> {
        match (&self.n_list, self.n) {
            (Some(v), _) => v.clone(),
            (None, Some(n)) => vec![n],
            (None, None) => default.to_vec(),
        }
    }

    fn grid(list: &Option<Vec<f64>>, range: &Option<GridRange>, default: &[f64]) -> Vec<f64> {
        let mut v: Vec<f64> = list.clone().unwrap_or_default();
        if let Some(r) = range {
            v.extend(r.values());
        }
        if v.is_empty() {
            default.to_vec()
        } else {
            v
        }
    }

    fn alphas(&self, default: &[f64]) -> Vec<f64> {
        Self::grid(&self.alpha, &self.alpha_range, default)
    }

    fn kappas(&self, default: &[f64]) -> Vec<f64> {
        Self::grid(&self.kappa, &self.kappa_range, default)
    }

    fn single(values: Vec<f64>, name: &str) -> CliResult<f64> {
        match values[..] {
            [v] => Ok(v),
            _ => Err(CliError::Config(format!("expected a single {name} value"))),
        }
    }

    fn single_params(&self) -> CliResult<Parameters> {
        let alpha = Self::single(self.alphas(&[0.0]), "alpha")?;
        let kappa = Self::single(self.kappas(&[0.0]), "kappa")?;
        Ok(Parameters::new(self.single_n()?, alpha, kappa)?)
    }

    fn pool(&self) -> CliResult<rayon::ThreadPool> {
        let mut b = rayon::ThreadPoolBuilder::new();
        if let Some(t) = self.threads {
            b = b.num_threads(t);
        }
        b.build().map_err(|e| CliError::Config(e.to_string()))
    }

    fn guard_oracle(&self, n: usize) -> CliResult<()> {
        if n > ORACLE_LIMIT && !self.allow_slow {
            return Err(CliError::RefusedSlow(format!(
                "double-double dense solve at n = {n} exceeds {ORACLE_LIMIT}"
            )));
        }
        Ok(())
    }

    fn emit(&self, table: &Table) -> CliResult<()> {
        match &self.out {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                table.write(self.format, &mut w)?;
                w.flush()?;
            }
            None => {
                let stdout = io::stdout();
                table.write(self.format, stdout.lock())?;
            }
        }
        Ok(())
    }
}

/// Runs `f` over `items` on the configured pool; results keep input order.
fn sweep<I, R, F>(common: &Common, items: Vec<I>, f: F) -> CliResult<Vec<R>>
where
    I: Send + Sync,
    R: Send,
    F: Fn(&I) -> comrade_core::Result<R> + Send + Sync,
{
    let pool = common.pool()?;
    let out: comrade_core::Result<Vec<R>> = pool.install(|| items.par_iter().map(&f).collect());
    Ok(out?)
}

fn zeros_table(params: &Parameters, spectrum: &Spectrum) -> CliResult<Table> {
    let mut t = Table::new(&["index", "re", "im", "residual"]);
    for r in zero_rows(params, spectrum)? {
        t.push(vec![r.index.into(), r.re.into(), r.im.into(), r.residual.into()]);
    }
    Ok(t)
}

fn cmd_zeros(c: &Common) -> CliResult<()> {
    let params = c.single_params()?;
    let algorithm = Algorithm::from(c.algorithm);
    if algorithm == Algorithm::DenseDd {
        c.guard_oracle(params.n())?;
    }
    match experiments::solve(&params, algorithm, c.options()) {
        Ok(s) => c.emit(&zeros_table(&params, &s)?),
        Err(CoreError::NonConvergence { partial, found, block }) => {
            c.emit(&zeros_table(&params, &partial)?)?;
            Err(CliError::NonConvergence(format!(
                "QR iteration stalled on rows {}..={} after {found} eigenvalues; partial output written",
                block.0, block.1
            )))
        }
        Err(e) => Err(e.into()),
    }
}

fn cmd_timing(c: &Common) -> CliResult<()> {
    let alpha = c.alphas(&[0.5])[0];
    let kappa = c.kappas(&[alpha])[0];
    let mut t = Table::new(&["n", "seconds_fast", "seconds_dense"]);
    // serial on purpose: concurrent runs would distort wall times
    for n in c.n_values(&[250, 500, 1000, 2000]) {
        let r = timing_row(n, alpha, kappa, c.reps)?;
        t.push(vec![r.n.into(), r.seconds_fast.into(), r.seconds_dense.into()]);
    }
    c.emit(&t)
}

fn cmd_accuracy(c: &Common) -> CliResult<()> {
    let n = if c.n.is_none() && c.n_list.is_none() { 100 } else { c.single_n()? };
    c.guard_oracle(n)?;
    let alphas = c.alphas(&GridRange { start: -1.0, step: 0.5, stop: 5.0 }.values());
    let opts = c.options();
    let mut rows = sweep(c, alphas, |&a| accuracy_row(n, a, opts))?;
    rows.sort_by(|x, y| x.alpha.total_cmp(&y.alpha));
    let mut t = Table::new(&["alpha", "err_fast", "err_dense", "bound_sym", "bound_unsym"]);
    for r in rows {
        t.push(vec![
            r.alpha.into(),
            r.err_fast.into(),
            r.err_dense.into(),
            r.bound_sym.into(),
            r.bound_unsym.into(),
        ]);
    }
    c.emit(&t)
}

fn cmd_separation(c: &Common) -> CliResult<()> {
    let n = c.single_n()?;
    let mut settings = SeparationSettings {
        width: c.width,
        ..SeparationSettings::default()
    };
    if let Some(r) = c.kappa_range {
        settings.scan_step = r.step;
        settings.kappa_max = r.stop;
    }
    let alphas = c.alphas(&GridRange { start: 0.0, step: 0.5, stop: 5.0 }.values());
    let opts = c.options();
    let mut rows = sweep(c, alphas, |&a| separation_row(n, a, settings, opts))?;
    rows.sort_by(|x, y| x.alpha.total_cmp(&y.alpha));
    let mut t = Table::new(&["alpha", "kappa_boundary"]);
    for r in rows {
        t.push(vec![r.alpha.into(), r.kappa_boundary.into()]);
    }
    c.emit(&t)
}

fn cmd_growth(c: &Common) -> CliResult<()> {
    let ns = c.n_values(&[100, 400, 1600]);
    let alphas = c.alphas(&[0.0]);
    let kappas = c.kappas(&[0.0]);
    let mut grid = Vec::with_capacity(ns.len() * alphas.len() * kappas.len());
    for &n in &ns {
        for &a in &alphas {
            for &k in &kappas {
                grid.push((n, a, k));
            }
        }
    }
    let opts = c.options();
    let mut rows = sweep(c, grid, |&(n, a, k)| growth_row(n, a, k, opts))?;
    rows.sort_by(|x, y| {
        x.n.cmp(&y.n)
            .then(x.alpha.total_cmp(&y.alpha))
            .then(x.kappa.total_cmp(&y.kappa))
    });
    let mut t = Table::new(&["n", "alpha", "kappa", "max_real", "min_real", "max_abs_imag"]);
    for r in rows {
        t.push(vec![
            r.n.into(),
            r.alpha.into(),
            r.kappa.into(),
            r.max_real.into(),
            r.min_real.into(),
            r.max_abs_imag.into(),
        ]);
    }
    c.emit(&t)
}

fn cmd_spectrum(c: &Common) -> CliResult<()> {
    let params = c.single_params()?;
    let algorithm = Algorithm::from(c.algorithm);
    if algorithm == Algorithm::DenseDd {
        c.guard_oracle(params.n())?;
    }
    let s = experiments::solve(&params, algorithm, c.options())?;
    let mut t = Table::new(&["re", "im"]);
    for z in &s.eigenvalues {
        t.push(vec![z.re.into(), z.im.into()]);
    }
    c.emit(&t)
}

pub fn run(cli: &Cli) -> CliResult<()> {
    let (common, f): (&Common, fn(&Common) -> CliResult<()>) = match &cli.command {
        Command::Zeros(c) => (c, cmd_zeros),
        Command::Timing(c) => (c, cmd_timing),
        Command::Accuracy(c) => (c, cmd_accuracy),
        Command::Separation(c) => (c, cmd_separation),
        Command::Growth(c) => (c, cmd_growth),
        Command::Spectrum(c) => (c, cmd_spectrum),
    };
    common.validate()?;
    f(common)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        let r: GridRange = "-1:0.5:1".parse().unwrap();
        assert_eq!(r.values(), vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        let r: GridRange = "0:0.1:0.3".parse().unwrap();
        assert_eq!(r.values().len(), 4);
        assert!("1:0:2".parse::<GridRange>().is_err());
        assert!("2:1:1".parse::<GridRange>().is_err());
        assert!("1:2".parse::<GridRange>().is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(CoreError::InvalidParameters(String::new())).exit_code(), 2);
        assert_eq!(CliError::RefusedSlow(String::new()).exit_code(), 4);
    }
}
