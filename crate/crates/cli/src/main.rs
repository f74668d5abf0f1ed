//! `prolate`: eigenvalues, bounds, sweeps and verification suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 bad parameters,
//! 3 I/O failure.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use prolate::bounds::{
    eig_envelope, pswf_transition, width_bound_prior, width_bound_thm1, width_bound_thm2, BoundId, PriorWidth,
};
use prolate::spectrum::{full_spectrum, transition_width, transition_window, tridiagonal_spectrum, Method};
use prolate::sweep::{run_sweep, SweepMode};
use prolate::verify::{run_suite, Suite};
use prolate::{BoundSet, ProlateParams, SpectrumEntry};

use config::SweepFile;
use output::{emit, Cell, Format, Table};

pub const EIGS_HEADER: [&str; 5] = ["k", "lambda", "lower", "upper", "in_envelope"];
pub const WIDTH_HEADER: [&str; 9] = ["N", "W", "eps", "width", "thm1", "thm2", "eq2", "eq3", "eq6"];
pub const SWEEP_HEADER: [&str; 8] = ["N", "W", "eps", "width", "bound_thm1", "bound_thm2", "gap", "advisory"];
pub const BOUNDS_HEADER: [&str; 4] = ["id", "value", "integer_report", "flagged"];
pub const PSWF_HEADER: [&str; 7] = ["c", "eps", "thm3_bound", "N", "delta", "inner_width", "outer_width"];

/// Window used when `eigs` is given no index range.
const EIGS_WINDOW_EPS: f64 = 1e-13;

/// Largest proxy dimension chosen automatically by `pswf`.
const PSWF_AUTO_MAX_N: usize = 1 << 22;

#[derive(Debug)]
pub enum CliError {
    Params(String),
    Verify(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Params(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Params(m) => write!(f, "invalid parameters: {m}"),
            CliError::Verify(m) => write!(f, "verification failed: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<prolate::Error> for CliError {
    fn from(e: prolate::Error) -> Self {
        match e {
            prolate::Error::Numerical { .. } => CliError::Verify(e.to_string()),
            _ => CliError::Params(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "prolate", version, about = "Prolate matrix eigenvalues and bounds on their transition region")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Dense,
    Trid,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Dense => Method::Dense,
            MethodArg::Trid => Method::Tridiagonal,
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalues with their two-sided envelopes.
    Eigs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: f64,
        /// First index (defaults to the window where 1e-13 < lambda < 1 - 1e-13, plus one index each side).
        #[arg(long)]
        kmin: Option<usize>,
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, value_enum, default_value = "trid")]
        method: MethodArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Measured transition width next to every width bound.
    Width {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, value_enum, default_value = "trid")]
        method: MethodArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// All bounds at one parameter set, without computing eigenvalues.
    Bounds {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        w: f64,
        #[arg(long)]
        eps: Option<f64>,
        /// Index for the per-eigenvalue bounds.
        #[arg(long)]
        k: Option<usize>,
        /// K for head sums.
        #[arg(long)]
        head_k: Option<usize>,
        /// K for tail sums.
        #[arg(long)]
        tail_k: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Width versus bounds over a grid of parameters.
    Sweep {
        /// Sweep specification file (TOML).
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Explicit N values (comma separated).
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<usize>>,
        #[arg(long)]
        n_min_exp: Option<u32>,
        #[arg(long)]
        n_max_exp: Option<u32>,
        /// Explicit W values (comma separated).
        #[arg(long, value_delimiter = ',')]
        w: Option<Vec<f64>>,
        #[arg(long)]
        w_count: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        w_min_exp: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        w_max_exp: Option<f64>,
        /// Thresholds (comma separated).
        #[arg(long, value_delimiter = ',')]
        eps: Option<Vec<f64>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Continuous-case width bound and the bracketing proxy counts.
    Pswf {
        #[arg(long)]
        c: f64,
        #[arg(long, default_value_t = 1e-3)]
        eps: f64,
        /// Proxy dimension (chosen so that delta <= eps/4 when omitted).
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run an invariant suite and print a JSON summary.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Figure1,
    Figure2,
    Figure3,
    Custom,
}

impl From<ModeArg> for SweepMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Figure1 => SweepMode::Figure1,
            ModeArg::Figure2 => SweepMode::Figure2,
            ModeArg::Figure3 => SweepMode::Figure3,
            ModeArg::Custom => SweepMode::Custom,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Spectrum,
    Bounds,
    Displacement,
    Chebsinc,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Spectrum => Suite::Spectrum,
            SuiteArg::Bounds => Suite::Bounds,
            SuiteArg::Displacement => Suite::Displacement,
            SuiteArg::Chebsinc => Suite::Chebsinc,
            SuiteArg::All => Suite::All,
        }
    }
}

fn params(n: usize, w: f64) -> Result<ProlateParams, CliError> {
    Ok(ProlateParams::new(n, w)?)
}

/// Index range from the last `lambda > 1 - eps` to the first `lambda < eps`.
fn default_window(p: &ProlateParams) -> Result<(usize, usize), CliError> {
    let slice = transition_window(p, EIGS_WINDOW_EPS)?;
    let inside: Vec<usize> = slice.entries.iter().filter(|e| e.in_transition(EIGS_WINDOW_EPS)).map(|e| e.k).collect();
    let (lo, hi) = match (inside.first(), inside.last()) {
        (Some(&a), Some(&b)) => (a.saturating_sub(1).max(slice.kmin), (b + 1).min(slice.kmax)),
        _ => {
            let c = p.floor_2nw().min(p.n() - 1);
            (c.saturating_sub(1), (c + 1).min(p.n() - 1))
        }
    };
    Ok((lo, hi))
}

fn eigs_row(n: usize, w: f64, e: &SpectrumEntry) -> Result<Vec<Cell>, CliError> {
    let env = eig_envelope(n, w, e.k)?;
    let tol = 1e-12;
    let inside = e.complement <= (1.0 - env.lower) + tol && e.lambda <= env.upper + tol;
    Ok(vec![e.k.into(), e.lambda.into(), env.lower.into(), env.upper.into(), inside.into()])
}

fn cmd_eigs(
    n: usize,
    w: f64,
    kmin: Option<usize>,
    kmax: Option<usize>,
    method: MethodArg,
) -> Result<Table, CliError> {
    let p = params(n, w)?;
    let (lo, hi) = match (kmin, kmax) {
        (None, None) => default_window(&p)?,
        (a, b) => (a.unwrap_or(0), b.unwrap_or(n - 1)),
    };
    if lo > hi || hi >= n {
        return Err(CliError::Params(format!("index range {lo}..={hi} invalid for N = {n}")));
    }
    let entries = match method {
        MethodArg::Trid => tridiagonal_spectrum(&p, lo, hi)?.entries,
        MethodArg::Dense => full_spectrum(&p, Method::Dense)?.entries[lo..=hi].to_vec(),
    };
    let mut t = Table::new(&EIGS_HEADER);
    for e in &entries {
        t.push(eigs_row(n, w, e)?);
    }
    Ok(t)
}

fn cmd_width(n: usize, w: f64, eps: f64, method: MethodArg) -> Result<Table, CliError> {
    let p = params(n, w)?;
    let width = match method {
        MethodArg::Trid => transition_width(&p, eps)?.width,
        MethodArg::Dense => {
            // Validates eps through the same path as the tridiagonal route.
            width_bound_thm1(n, eps)?;
            full_spectrum(&p, Method::Dense)?.count_transition(eps)
        }
    };
    let prior = |which| width_bound_prior(n, w, eps, which).ok().map(|b| b.integer_report);
    let mut t = Table::new(&WIDTH_HEADER);
    t.push(vec![
        n.into(),
        w.into(),
        eps.into(),
        width.into(),
        width_bound_thm1(n, eps)?.integer_report.into(),
        width_bound_thm2(n, w, eps)?.integer_report.into(),
        prior(PriorWidth::Eq2).into(),
        prior(PriorWidth::Eq3).into(),
        prior(PriorWidth::Eq6).into(),
    ]);
    Ok(t)
}

fn cmd_bounds(
    n: usize,
    w: f64,
    eps: Option<f64>,
    k: Option<usize>,
    head_k: Option<usize>,
    tail_k: Option<usize>,
) -> Result<Table, CliError> {
    let p = params(n, w)?;
    let set = BoundSet::evaluate(&p, eps, k, head_k, tail_k)?;
    let mut t = Table::new(&BOUNDS_HEADER);
    for id in BoundId::ALL {
        if let Some(v) = set.get(id) {
            t.push(vec![id.as_str().into(), v.value.into(), v.integer_report.into(), v.flagged.into()]);
        }
    }
    Ok(t)
}

fn cmd_sweep(file: &SweepFile) -> Result<Table, CliError> {
    let config = file.resolve()?;
    let rows = run_sweep(&config)?;
    let mut t = Table::new(&SWEEP_HEADER);
    for r in rows {
        t.push(vec![
            r.n.into(),
            r.w.into(),
            r.eps.into(),
            r.width.into(),
            r.bound_thm1.into(),
            r.bound_thm2.into(),
            r.gap.into(),
            r.advisory.into(),
        ]);
    }
    Ok(t)
}

/// Smallest power of two above `2c/pi` with `delta <= eps/4`.
fn auto_proxy_n(c: f64, eps: f64) -> Result<usize, CliError> {
    let mut n = 16usize;
    while n <= PSWF_AUTO_MAX_N {
        if let Ok(d) = prolate::bounds::pswf_delta(c, n) {
            if d <= eps / 4.0 {
                return Ok(n);
            }
        }
        n *= 2;
    }
    Err(CliError::Params(format!("no proxy dimension up to {PSWF_AUTO_MAX_N} resolves eps = {eps}; pass --n")))
}

fn cmd_pswf(c: f64, eps: f64, n: Option<usize>) -> Result<Table, CliError> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(CliError::Params(format!("c must be positive and finite, got {c}")));
    }
    if !(eps > 0.0 && eps < 0.5) {
        return Err(CliError::Params(format!("eps must lie in (0, 1/2), got {eps}")));
    }
    let n = match n {
        Some(n) => n,
        None => auto_proxy_n(c, eps)?,
    };
    let r = pswf_transition(c, eps, n)?;
    let mut t = Table::new(&PSWF_HEADER);
    t.push(vec![
        c.into(),
        eps.into(),
        r.thm3.integer_report.into(),
        n.into(),
        r.delta.into(),
        r.inner_width.into(),
        r.outer_width.into(),
    ]);
    Ok(t)
}

fn cmd_verify(suite: SuiteArg, seed: u64, out: Option<PathBuf>) -> Result<(), CliError> {
    let summary = run_suite(suite.into(), seed);
    let mut text = serde_json::to_string_pretty(&summary).expect("serializable");
    text.push('\n');
    emit(&text, out.as_deref())?;
    if summary.ok() {
        Ok(())
    } else {
        Err(CliError::Verify(summary.failed.join(", ")))
    }
}

fn write_table(t: &Table, output: &OutputArgs) -> Result<(), CliError> {
    emit(&t.render(output.format.unwrap_or(Format::Csv)), output.out.as_deref())
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Params("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Params(e.to_string()))?;
    }
    match cli.command {
        Command::Eigs { n, w, kmin, kmax, method, output } => write_table(&cmd_eigs(n, w, kmin, kmax, method)?, &output),
        Command::Width { n, w, eps, method, output } => write_table(&cmd_width(n, w, eps, method)?, &output),
        Command::Bounds { n, w, eps, k, head_k, tail_k, output } => {
            write_table(&cmd_bounds(n, w, eps, k, head_k, tail_k)?, &output)
        }
        Command::Sweep { config, mode, n, n_min_exp, n_max_exp, w, w_count, w_min_exp, w_max_exp, eps, output } => {
            let base = match &config {
                Some(path) => SweepFile::load(path)?,
                None => SweepFile::default(),
            };
            let flags = SweepFile {
                mode: mode.map(Into::into),
                n,
                n_min_exp,
                n_max_exp,
                w,
                w_count,
                w_min_exp,
                w_max_exp,
                eps,
                out: output.out.clone(),
                format: output.format,
            };
            let file = base.overlay(flags);
            let table = cmd_sweep(&file)?;
            emit(&table.render(file.format.unwrap_or(Format::Csv)), file.out.as_deref())
        }
        Command::Pswf { c, eps, n, output } => write_table(&cmd_pswf(c, eps, n)?, &output),
        Command::Verify { suite, seed, out } => cmd_verify(suite, seed, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("prolate: {e}");
            ExitCode::from(e.code())
        }
    }
}
