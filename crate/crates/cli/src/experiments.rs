//! One function per subcommand. Each returns its rows in parameter order.

use std::time::Instant;

use rayon::prelude::*;
use tzrank::bounds::{
    fd_poisson_tt_bound, gaussian_bump_bound, hilbert_tt_bound, ml_storage_bound, spectral_poisson_tt_bound,
    tt_storage_bound, SpecializedBound, SpectralSet,
};
use tzrank::formats::{tt_svd, LowRankFormat};
use tzrank::problems::{
    constant_coefficients, fd_poisson_constant, fourier_like, gaussian_bumps, hilbert_displacement, hilbert_tensor,
    spectral_poisson, BumpCenters,
};
use tzrank::sylvester::{
    direct_kron_solve_3d, eigen_solve_3d, residual_3d, tt_sylvester_solve_3d, tucker_sylvester_solve_3d,
    SylvesterProblem3D, DIRECT_SIZE_CAP, EIGEN_MODE_CAP,
};
use tzrank::tensor::DenseTensor;

use crate::args::{BoundProblem, Solver};
use crate::record::ExperimentRecord;
use crate::RunError;

/// Largest dense solution (entries) the rank sweeps and the eigen benchmark
/// will build.
pub const DENSE_ENTRY_CAP: usize = 1 << 24;

fn numerical(point: &str, e: tzrank::Error) -> RunError {
    RunError::Numerical(format!("{point}: {e}"))
}

fn usage(msg: impl Into<String>) -> RunError {
    RunError::Usage(msg.into())
}

fn elapsed_ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

fn check_eps(eps: &[f64]) -> Result<(), RunError> {
    match eps.iter().find(|&&e| !(e > 0.0 && e < 1.0)) {
        Some(e) => Err(usage(format!("accuracy {e} must lie in (0, 1)"))),
        None => Ok(()),
    }
}

fn collect<T>(rows: Vec<Result<Vec<T>, RunError>>) -> Result<Vec<T>, RunError> {
    let mut out = Vec::new();
    for r in rows {
        out.extend(r?);
    }
    Ok(out)
}

fn relative_residual<X: tzrank::sylvester::ResidualTarget + ?Sized>(
    p: &SylvesterProblem3D,
    x: &X,
    point: &str,
) -> Result<f64, RunError> {
    Ok(residual_3d(p, x).map_err(|e| numerical(point, e))? / p.rhs_norm())
}

/// `s_1` and TT storage of the dense tensor truncated at `eps`.
fn observed(x: &DenseTensor<f64>, eps: f64, point: &str) -> Result<(usize, u128), RunError> {
    let tt = tt_svd(x, eps).map_err(|e| numerical(point, e))?;
    Ok((tt.ranks()[1], tt.storage_count() as u128))
}

pub fn fourier_ratio(n: usize, ms: &[f64], eps: f64, timings: bool) -> Result<Vec<ExperimentRecord>, RunError> {
    if n < 2 {
        return Err(usage("fourier-ratio needs n >= 2"));
    }
    check_eps(&[eps])?;
    if let Some(m) = ms.iter().find(|m| !m.is_finite()) {
        return Err(usage(format!("frequency {m} must be finite")));
    }
    let rows: Vec<_> = ms
        .par_iter()
        .map(|&m| {
            let point = format!("fourier-ratio n={n} M={m}");
            let t = Instant::now();
            let x = fourier_like(m, n).map_err(|e| numerical(&point, e))?;
            let tt = tt_svd(&x, eps).map_err(|e| numerical(&point, e))?;
            let mut r = ExperimentRecord::new("fourier-ratio", n);
            r.eps = Some(eps);
            r.m = Some(m);
            r.s1_observed = Some(tt.ranks()[1]);
            r.storage_observed = Some(tt.storage_count() as u128);
            r.time_ms = timings.then(|| elapsed_ms(t));
            Ok(vec![r])
        })
        .collect();
    collect(rows)
}

pub fn gauss_bumps(
    n: usize,
    count: usize,
    gammas: &[f64],
    seed: u64,
    eps: &[f64],
    timings: bool,
) -> Result<Vec<ExperimentRecord>, RunError> {
    if n < 2 || count == 0 {
        return Err(usage("gauss-bumps needs n >= 2 and at least one bump"));
    }
    if let Some(g) = gammas.iter().find(|&&g| !(g > 0.0 && g.is_finite())) {
        return Err(usage(format!("bump width {g} must be positive")));
    }
    check_eps(eps)?;
    let rows: Vec<_> = gammas
        .par_iter()
        .map(|&gamma| {
            let point = format!("gauss-bumps n={n} M={count} gamma={gamma} seed={seed}");
            let x = gaussian_bumps(count, gamma, &BumpCenters::Seeded(seed), n).map_err(|e| numerical(&point, e))?;
            eps.iter()
                .map(|&e| {
                    let point = format!("{point} eps={e}");
                    let t = Instant::now();
                    let (s1, storage) = observed(&x, e, &point)?;
                    let bound = gaussian_bump_bound(count, n, gamma, e).map_err(|err| numerical(&point, err))?;
                    let mut r = ExperimentRecord::new("gauss-bumps", n);
                    r.eps = Some(e);
                    r.m = Some(count as f64);
                    r.gamma = Some(gamma);
                    r.seed = Some(seed);
                    r.s1_observed = Some(s1);
                    r.s1_bound = Some(bound.s1);
                    r.storage_observed = Some(storage);
                    r.time_ms = timings.then(|| elapsed_ms(t));
                    Ok(r)
                })
                .collect::<Result<Vec<_>, RunError>>()
        })
        .collect();
    collect(rows)
}

/// Rank sweep shared by the three displacement problems: observed ranks of
/// a dense solution, the specialized bound, and the residual of the fADI
/// tensor-train solve at each accuracy.
fn displacement_sweep(
    name: &str,
    n: usize,
    p: &SylvesterProblem3D,
    exact: Option<&DenseTensor<f64>>,
    eps: &[f64],
    bound: fn(usize, f64) -> tzrank::Result<SpecializedBound>,
    timings: bool,
) -> Result<Vec<ExperimentRecord>, RunError> {
    eps.iter()
        .map(|&e| {
            let point = format!("{name} n={n} eps={e}");
            let t = Instant::now();
            let x = tt_sylvester_solve_3d(p, e).map_err(|err| numerical(&point, err))?;
            let time = elapsed_ms(t);
            let (s1, storage) = match exact {
                Some(d) => observed(d, e, &point)?,
                None => (x.ranks()[1], x.storage_count() as u128),
            };
            let b = bound(n, e).map_err(|err| numerical(&point, err))?;
            let mut r = ExperimentRecord::new(name, n);
            r.eps = Some(e);
            r.s1_observed = Some(s1);
            r.s1_bound = Some(b.s1);
            r.storage_observed = Some(storage);
            r.storage_bound = Some(b.storage);
            r.residual = Some(relative_residual(p, &x, &point)?);
            r.time_ms = timings.then_some(time);
            Ok(r)
        })
        .collect()
}

pub fn hilbert(ns: &[usize], eps: &[f64], timings: bool) -> Result<Vec<ExperimentRecord>, RunError> {
    if ns.contains(&0) {
        return Err(usage("hilbert needs n >= 1"));
    }
    check_eps(eps)?;
    let rows: Vec<_> = ns
        .par_iter()
        .map(|&n| {
            let point = format!("hilbert n={n}");
            let h = match n.pow(3) <= DENSE_ENTRY_CAP {
                true => Some(hilbert_tensor(n).map_err(|e| numerical(&point, e))?),
                false => None,
            };
            let p = hilbert_displacement(n).map_err(|e| numerical(&point, e))?;
            displacement_sweep("hilbert", n, &p, h.as_ref(), eps, hilbert_tt_bound, timings)
        })
        .collect();
    collect(rows)
}

fn dense_oracle(p: &SylvesterProblem3D, point: &str) -> Result<Option<DenseTensor<f64>>, RunError> {
    let ext = p.extents();
    if ext.iter().product::<usize>() > DENSE_ENTRY_CAP || ext.iter().any(|&n| n > EIGEN_MODE_CAP) {
        return Ok(None);
    }
    eigen_solve_3d(p).map(Some).map_err(|e| numerical(point, e))
}

pub fn poisson_fd(ns: &[usize], eps: &[f64], timings: bool) -> Result<Vec<ExperimentRecord>, RunError> {
    if let Some(n) = ns.iter().find(|&&n| n < 3) {
        return Err(usage(format!("poisson-fd needs n >= 3, got {n}")));
    }
    check_eps(eps)?;
    let rows: Vec<_> = ns
        .par_iter()
        .map(|&n| {
            let point = format!("poisson-fd n={n}");
            let p = fd_poisson_constant(n, 1.0).map_err(|e| numerical(&point, e))?;
            let exact = dense_oracle(&p, &point)?;
            displacement_sweep("poisson-fd", n, &p, exact.as_ref(), eps, fd_poisson_tt_bound, timings)
        })
        .collect();
    collect(rows)
}

fn spectral_problem(n: usize, point: &str) -> Result<SylvesterProblem3D, RunError> {
    let f = constant_coefficients(n, 1.0).map_err(|e| numerical(point, e))?;
    Ok(spectral_poisson(n, &f).map_err(|e| numerical(point, e))?.0)
}

pub fn poisson_spectral(ns: &[usize], eps: &[f64], timings: bool) -> Result<Vec<ExperimentRecord>, RunError> {
    if let Some(n) = ns.iter().find(|&&n| n < 4) {
        return Err(usage(format!("poisson-spectral needs n >= 4, got {n}")));
    }
    check_eps(eps)?;
    let rows: Vec<_> = ns
        .par_iter()
        .map(|&n| {
            let point = format!("poisson-spectral n={n}");
            let p = spectral_problem(n, &point)?;
            let exact = dense_oracle(&p, &point)?;
            displacement_sweep("poisson-spectral", n, &p, exact.as_ref(), eps, spectral_poisson_tt_bound, timings)
        })
        .collect();
    collect(rows)
}

/// Runs sequentially so timings do not compete for cores. A solver whose
/// size cap is exceeded produces no row for that `n`.
pub fn bench_solvers(
    ns: &[usize],
    solvers: &[Solver],
    eps: f64,
    repeats: usize,
) -> Result<Vec<ExperimentRecord>, RunError> {
    if let Some(n) = ns.iter().find(|&&n| n < 4) {
        return Err(usage(format!("bench-solvers needs n >= 4, got {n}")));
    }
    if repeats == 0 {
        return Err(usage("repeats must be positive"));
    }
    check_eps(&[eps])?;
    let mut rows = Vec::new();
    for &n in ns {
        let point = format!("bench-solvers n={n}");
        let p = spectral_problem(n, &point)?;
        let entries = (n + 1).pow(3);
        for &solver in solvers {
            let fits = match solver {
                Solver::Direct => entries <= DIRECT_SIZE_CAP,
                Solver::Eigen => entries <= DENSE_ENTRY_CAP && n < EIGEN_MODE_CAP,
                Solver::Fadi | Solver::Tucker => true,
            };
            if !fits {
                continue;
            }
            let point = format!("{point} solver={}", solver.label());
            let mut best = f64::INFINITY;
            let mut r = ExperimentRecord::new(&format!("bench-{}", solver.label()), n);
            for _ in 0..repeats {
                let t = Instant::now();
                let (s1, residual) = match solver {
                    Solver::Direct => {
                        let x = direct_kron_solve_3d(&p).map_err(|e| numerical(&point, e))?;
                        (None, relative_residual(&p, &x, &point)?)
                    }
                    Solver::Eigen => {
                        let x = eigen_solve_3d(&p).map_err(|e| numerical(&point, e))?;
                        (None, relative_residual(&p, &x, &point)?)
                    }
                    Solver::Fadi => {
                        let x = tt_sylvester_solve_3d(&p, eps).map_err(|e| numerical(&point, e))?;
                        best = best.min(elapsed_ms(t));
                        (Some(x.ranks()[1]), relative_residual(&p, &x, &point)?)
                    }
                    Solver::Tucker => {
                        let x = tucker_sylvester_solve_3d(&p, eps).map_err(|e| numerical(&point, e))?;
                        best = best.min(elapsed_ms(t));
                        (Some(x.ranks()[0]), relative_residual(&p, &x, &point)?)
                    }
                };
                // the dense solvers' timings include the residual check,
                // which is cheap next to the solve
                if matches!(solver, Solver::Direct | Solver::Eigen) {
                    best = best.min(elapsed_ms(t));
                }
                r.s1_observed = s1;
                r.residual = Some(residual);
            }
            if matches!(solver, Solver::Fadi | Solver::Tucker) {
                r.eps = Some(eps);
            }
            r.time_ms = Some(best);
            rows.push(r);
        }
    }
    Ok(rows)
}

pub struct BoundQuery {
    pub problem: BoundProblem,
    pub n: usize,
    pub eps: Vec<f64>,
    pub bumps: Option<usize>,
    pub gamma: Option<f64>,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub d: usize,
}

pub fn bound_calc(q: &BoundQuery) -> Result<Vec<ExperimentRecord>, RunError> {
    check_eps(&q.eps)?;
    let name = match q.problem {
        BoundProblem::Hilbert => "bound-hilbert",
        BoundProblem::PoissonFd => "bound-poisson-fd",
        BoundProblem::PoissonSpectral => "bound-poisson-spectral",
        BoundProblem::Bumps => "bound-bumps",
        BoundProblem::Interval => "bound-interval",
        BoundProblem::IntervalTucker => "bound-interval-tucker",
    };
    let bad = |e: tzrank::Error| usage(format!("{name}: {e}"));
    let interval = || -> Result<Vec<SpectralSet>, RunError> {
        let (Some(lo), Some(hi)) = (q.lo, q.hi) else {
            return Err(usage(format!("{name} needs --lo and --hi")));
        };
        if q.d < 2 {
            return Err(usage(format!("{name} needs d >= 2")));
        }
        Ok(vec![SpectralSet::interval(lo, hi).map_err(bad)?; q.d])
    };
    q.eps
        .iter()
        .map(|&e| {
            let mut r = ExperimentRecord::new(name, q.n);
            r.eps = Some(e);
            match q.problem {
                BoundProblem::Hilbert | BoundProblem::PoissonFd | BoundProblem::PoissonSpectral => {
                    let f = match q.problem {
                        BoundProblem::Hilbert => hilbert_tt_bound,
                        BoundProblem::PoissonFd => fd_poisson_tt_bound,
                        _ => spectral_poisson_tt_bound,
                    };
                    let b = f(q.n, e).map_err(bad)?;
                    r.s1_bound = Some(b.s1);
                    r.storage_bound = Some(b.storage);
                }
                BoundProblem::Bumps => {
                    let (Some(m), Some(g)) = (q.bumps, q.gamma) else {
                        return Err(usage("bound-bumps needs --m and --gamma"));
                    };
                    r.m = Some(m as f64);
                    r.gamma = Some(g);
                    r.s1_bound = Some(gaussian_bump_bound(m, q.n, g, e).map_err(bad)?.s1);
                }
                BoundProblem::Interval => {
                    let sets = interval()?;
                    let b = tt_storage_bound(&sets, &vec![1; q.d - 1], &vec![q.n; q.d], e).map_err(bad)?;
                    r.s1_bound = Some(b.s1());
                    r.storage_bound = Some(b.storage_bound);
                }
                BoundProblem::IntervalTucker => {
                    let sets = interval()?;
                    let b = ml_storage_bound(&sets, &vec![1; q.d], &vec![q.n; q.d], e).map_err(bad)?;
                    r.s1_bound = Some(b.s1());
                    r.storage_bound = Some(b.storage_bound);
                }
            }
            Ok(r)
        })
        .collect()
}

