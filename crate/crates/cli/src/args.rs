//! Command-line flags and sweep parsing.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug, Clone)]
#[command(name = "tzrank", version, about = "Tensor rank experiments: observed ranks against Zolotarev bounds")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone, Default)]
pub struct Common {
    /// Write the CSV here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Use the published problem sizes instead of the desk-scale defaults.
    #[arg(long, global = true)]
    pub paper_scale: bool,
    /// Do not fail when an observed rank exceeds its bound.
    #[arg(long, global = true)]
    pub no_assert: bool,
    /// Fill the time_ms column (always filled by bench-solvers). Timings make
    /// the output nondeterministic.
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// s1/(2M) for tensors sampled from exp(iMπxyz).
    FourierRatio(FourierArgs),
    /// s1 of sampled Gaussian-bump sums against the Bessel bound.
    GaussBumps(BumpArgs),
    /// Hilbert tensor ranks and storage against the displacement bound.
    Hilbert(SweepArgs),
    /// Finite-difference Poisson solution ranks against the bound.
    PoissonFd(SweepArgs),
    /// Spectral Poisson solution ranks against the bound.
    PoissonSpectral(SweepArgs),
    /// Wall time of the direct, eigen, fADI and Tucker solvers on the spectral
    /// Poisson problem.
    BenchSolvers(BenchArgs),
    /// Evaluate a rank bound without solving anything.
    BoundCalc(BoundArgs),
}

#[derive(Args, Debug, Clone)]
pub struct FourierArgs {
    /// Grid size per mode [default: 120, paper scale 600].
    #[arg(long)]
    pub n: Option<usize>,
    /// Explicit comma-separated frequencies; overrides the range flags.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<f64>>,
    #[arg(long)]
    pub m_min: Option<f64>,
    #[arg(long)]
    pub m_max: Option<f64>,
    #[arg(long)]
    pub m_step: Option<f64>,
    #[arg(long, default_value_t = 1e-10)]
    pub eps: f64,
}

#[derive(Args, Debug, Clone)]
pub struct BumpArgs {
    /// Grid size per mode [default: 80, paper scale 400].
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of bumps [default: 50, paper scale 300].
    #[arg(long)]
    pub m: Option<usize>,
    /// Bump widths [default: 10,100, paper scale 10,100,1000].
    #[arg(long, value_delimiter = ',')]
    pub gamma: Option<Vec<f64>>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `a:b` for every decade from a to b, or a comma list.
    #[arg(long, default_value = "1e-2:1e-10")]
    pub eps_sweep: String,
}

#[derive(Args, Debug, Clone)]
pub struct SweepArgs {
    /// Problem sizes [default: 10,50,100, paper scale 10,100,500].
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    /// `a:b` for every decade from a to b, or a comma list.
    #[arg(long, default_value = "1e-2:1e-13")]
    pub eps_sweep: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Solver {
    Direct,
    Eigen,
    Fadi,
    Tucker,
}

impl Solver {
    pub fn label(&self) -> &'static str {
        match self {
            Solver::Direct => "direct",
            Solver::Eigen => "eigen",
            Solver::Fadi => "fadi",
            Solver::Tucker => "tucker",
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct BenchArgs {
    /// `a:b` doubles from a up to b (b itself included), or a comma list
    /// [default: 32:256, paper scale 4:1500].
    #[arg(long)]
    pub n_sweep: Option<String>,
    #[arg(long, value_delimiter = ',', default_value = "direct,eigen,fadi")]
    pub solvers: Vec<Solver>,
    #[arg(long, default_value_t = 1e-8)]
    pub eps: f64,
    /// Runs per point; the fastest is reported.
    #[arg(long, default_value_t = 1)]
    pub repeats: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BoundProblem {
    Hilbert,
    PoissonFd,
    PoissonSpectral,
    Bumps,
    /// TT bound for `d` modes with spectra in `[lo, hi]` and a rank-one
    /// right-hand side.
    Interval,
    /// Multilinear (Tucker) version of `interval`.
    IntervalTucker,
}

#[derive(Args, Debug, Clone)]
pub struct BoundArgs {
    #[arg(long, value_enum)]
    pub problem: BoundProblem,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "1e-10")]
    pub eps_sweep: String,
    /// Number of bumps.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
}

/// `"1e-2:1e-5"` gives `1e-2, 1e-3, 1e-4, 1e-5`; `"1e-3,5e-7"` is taken
/// literally.
pub fn parse_eps_sweep(s: &str) -> Result<Vec<f64>, String> {
    let parse = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad accuracy '{t}': {e}"));
    let values = if let Some((a, b)) = s.split_once(':') {
        let (a, b) = (parse(a)?, parse(b)?);
        if !(a > 0.0 && b > 0.0) {
            return Err(format!("sweep bounds must be positive: {s}"));
        }
        let (ea, eb) = (a.log10(), b.log10());
        let steps = (ea - eb).abs().round() as i64;
        if ((ea - eb).abs() - steps as f64).abs() > 1e-9 {
            return Err(format!("sweep {s} does not span whole decades"));
        }
        let dir = if eb < ea { -1.0 } else { 1.0 };
        (0..=steps).map(|i| a * 10f64.powf(dir * i as f64)).map(tidy).collect()
    } else {
        s.split(',').map(parse).collect::<Result<Vec<_>, _>>()?
    };
    if let Some(bad) = values.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        return Err(format!("accuracy {bad} must lie in (0, 1)"));
    }
    Ok(values)
}

/// Snaps `a·10^k` computed in floating point to the literal it stands for.
fn tidy(v: f64) -> f64 {
    format!("{v:.12e}").parse().unwrap_or(v)
}

/// `"4:20"` gives `4, 8, 16, 20`; `"5,7"` is taken literally.
pub fn parse_n_sweep(s: &str) -> Result<Vec<usize>, String> {
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad size '{t}': {e}"));
    if let Some((a, b)) = s.split_once(':') {
        let (a, b) = (parse(a)?, parse(b)?);
        if a == 0 || a > b {
            return Err(format!("size sweep {s} must satisfy 0 < a <= b"));
        }
        let mut out = Vec::new();
        let mut v = a;
        while v < b {
            out.push(v);
            v *= 2;
        }
        out.push(b);
        Ok(out)
    } else {
        s.split(',').map(parse).collect()
    }
}
