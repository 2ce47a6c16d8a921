//! Experiment runner: each subcommand sweeps a parameter grid and emits one
//! CSV row per point.

pub mod args;
pub mod experiments;
pub mod record;

use args::{parse_eps_sweep, parse_n_sweep, Cli, Command};
use experiments::BoundQuery;
use record::ExperimentRecord;

#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    /// Bad flags or parameters: exit code 2.
    Usage(String),
    /// A solver or evaluator failed at a parameter point: exit code 3.
    Numerical(String),
    /// Observed rank above the bound on the listed rows: exit code 3.
    BoundViolation(Vec<String>),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Usage(_) => 2,
            RunError::Numerical(_) | RunError::BoundViolation(_) => 3,
        }
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Usage(m) => write!(f, "invalid arguments: {m}"),
            RunError::Numerical(m) => write!(f, "numerical failure at {m}"),
            RunError::BoundViolation(rows) => {
                write!(f, "observed rank exceeds the bound at: {}", rows.join("; "))
            }
        }
    }
}

impl std::error::Error for RunError {}

fn sizes(given: &Option<Vec<usize>>, paper: bool) -> Vec<usize> {
    match given {
        Some(v) => v.clone(),
        None if paper => vec![10, 100, 500],
        None => vec![10, 50, 100],
    }
}

fn frequencies(a: &args::FourierArgs, paper: bool) -> Result<Vec<f64>, RunError> {
    if let Some(m) = &a.m {
        return Ok(m.clone());
    }
    let (lo, hi, step) = if paper { (15.0, 150.0, 15.0) } else { (5.0, 30.0, 5.0) };
    let (lo, hi, step) = (a.m_min.unwrap_or(lo), a.m_max.unwrap_or(hi), a.m_step.unwrap_or(step));
    if !(step > 0.0 && lo <= hi) {
        return Err(RunError::Usage(format!("frequency range {lo}:{hi} step {step} is empty")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| lo + i as f64 * step).collect())
}

/// Runs the subcommand. Rows come back in parameter order whatever the
/// thread count.
pub fn run(cli: &Cli) -> Result<Vec<ExperimentRecord>, RunError> {
    let paper = cli.common.paper_scale;
    let timings = cli.common.timings;
    let eps = |s: &str| parse_eps_sweep(s).map_err(RunError::Usage);
    match &cli.command {
        Command::FourierRatio(a) => {
            let n = a.n.unwrap_or(if paper { 600 } else { 120 });
            experiments::fourier_ratio(n, &frequencies(a, paper)?, a.eps, timings)
        }
        Command::GaussBumps(a) => {
            let n = a.n.unwrap_or(if paper { 400 } else { 80 });
            let m = a.m.unwrap_or(if paper { 300 } else { 50 });
            let gammas = a.gamma.clone().unwrap_or(if paper { vec![10.0, 100.0, 1000.0] } else { vec![10.0, 100.0] });
            experiments::gauss_bumps(n, m, &gammas, a.seed, &eps(&a.eps_sweep)?, timings)
        }
        Command::Hilbert(a) => experiments::hilbert(&sizes(&a.n, paper), &eps(&a.eps_sweep)?, timings),
        Command::PoissonFd(a) => experiments::poisson_fd(&sizes(&a.n, paper), &eps(&a.eps_sweep)?, timings),
        Command::PoissonSpectral(a) => {
            experiments::poisson_spectral(&sizes(&a.n, paper), &eps(&a.eps_sweep)?, timings)
        }
        Command::BenchSolvers(a) => {
            let sweep = a.n_sweep.clone().unwrap_or_else(|| if paper { "4:1500" } else { "32:256" }.to_string());
            let ns = parse_n_sweep(&sweep).map_err(RunError::Usage)?;
            experiments::bench_solvers(&ns, &a.solvers, a.eps, a.repeats)
        }
        Command::BoundCalc(a) => experiments::bound_calc(&BoundQuery {
            problem: a.problem,
            n: a.n,
            eps: eps(&a.eps_sweep)?,
            bumps: a.m,
            gamma: a.gamma,
            lo: a.lo,
            hi: a.hi,
            d: a.d,
        }),
    }
}

/// Rows whose observed rank exceeds the bound, described for the error
/// message.
pub fn violations(rows: &[ExperimentRecord]) -> Vec<String> {
    rows.iter()
        .filter(|r| r.violates_bound())
        .map(|r| {
            format!(
                "{} n={} eps={:?} gamma={:?}: {} > {}",
                r.experiment,
                r.n,
                r.eps,
                r.gamma,
                r.s1_observed.unwrap_or_default(),
                r.s1_bound.unwrap_or_default()
            )
        })
        .collect()
}
