//! Rank and storage bounds for the tensor-train and multilinear formats,
//! plus the polynomial-sampling and Kruskal bounds.

use super::spectral::{
    check_minkowski_singly_separated, check_minkowski_sum_separated, Conditioning, SpectralSet,
};
use super::zolotarev::k_for_epsilon_interval;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundFormat {
    TT,
    ML,
}

impl BoundFormat {
    pub fn label(&self) -> &'static str {
        match self {
            BoundFormat::TT => "TT",
            BoundFormat::ML => "ML",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub format: BoundFormat,
    /// One `k` per split (TT) or per mode (ML).
    pub k_values: Vec<usize>,
    /// `γ` or `ρ` for each entry of `k_values`.
    pub conditioning: Vec<Conditioning>,
    /// TT: `(1, s_1, ..., s_{d-1}, 1)`. ML: `(k_1 μ_1, ..., k_d μ_d)`.
    pub rank_bound_vector: Vec<usize>,
    pub storage_bound: u128,
    pub epsilon: f64,
}

impl BoundReport {
    /// First interior TT rank, or the first multilinear rank.
    pub fn s1(&self) -> usize {
        match self.format {
            BoundFormat::TT => self.rank_bound_vector[1],
            BoundFormat::ML => self.rank_bound_vector[0],
        }
    }
}

/// `Σ_j s_{j-1} s_j n_j` for a TT rank vector `(1, s_1, ..., s_{d-1}, 1)`.
pub fn tt_storage_from_ranks(ranks: &[usize], extents: &[usize]) -> u128 {
    extents
        .iter()
        .enumerate()
        .map(|(j, &n)| ranks[j] as u128 * ranks[j + 1] as u128 * n as u128)
        .sum()
}

/// `Σ_j n_j t_j + ∏_j t_j`.
pub fn ml_storage_from_ranks(ranks: &[usize], extents: &[usize]) -> u128 {
    let factors: u128 = ranks.iter().zip(extents).map(|(&t, &n)| t as u128 * n as u128).sum();
    factors + ranks.iter().map(|&t| t as u128).product::<u128>()
}

fn check_common(sets: &[SpectralSet], extents: &[usize], eps: f64) -> Result<()> {
    if sets.len() != extents.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} spectral sets for {} modes",
            sets.len(),
            extents.len()
        )));
    }
    if extents.iter().any(|&n| n == 0) {
        return Err(Error::InvalidArgument("zero extent".into()));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("accuracy {eps} must lie in (0, 1)")));
    }
    Ok(())
}

/// TT bound for the solution of `Σ_j (I ⊗ .. ⊗ A_j ⊗ .. ⊗ I) x = g` where
/// `Λ(A_j) ⊆ sets[j]` and the split-`j` unfolding of `g` has rank `nu[j-1]`.
/// Each `k_j` makes the Zolotarev bound of the split-`j` pair at most `ε/√d`.
pub fn tt_storage_bound(sets: &[SpectralSet], nu: &[usize], extents: &[usize], eps: f64) -> Result<BoundReport> {
    check_common(sets, extents, eps)?;
    let d = extents.len();
    if nu.len() + 1 != d || nu.contains(&0) {
        return Err(Error::InvalidArgument(format!("need {} positive unfolding ranks, got {nu:?}", d - 1)));
    }
    let pairs = check_minkowski_sum_separated(sets)?;
    let tol = eps / (d as f64).sqrt();
    let mut k_values = Vec::with_capacity(d - 1);
    let mut conditioning = Vec::with_capacity(d - 1);
    let mut ranks = vec![1usize; d + 1];
    for (j, pair) in pairs.iter().enumerate() {
        let k = pair.k_for_tolerance(tol)?;
        conditioning.push(pair.conditioning()?);
        k_values.push(k);
        ranks[j + 1] = k.saturating_mul(nu[j]);
    }
    Ok(BoundReport {
        format: BoundFormat::TT,
        storage_bound: tt_storage_from_ranks(&ranks, extents),
        k_values,
        conditioning,
        rank_bound_vector: ranks,
        epsilon: eps,
    })
}

/// Multilinear bound: mode `j` of the right-hand side has rank `mu[j]`, and
/// each `k_j` comes from the pair `(Λ_j, −Σ_{i≠j} Λ_i)`.
pub fn ml_storage_bound(sets: &[SpectralSet], mu: &[usize], extents: &[usize], eps: f64) -> Result<BoundReport> {
    check_common(sets, extents, eps)?;
    let d = extents.len();
    if mu.len() != d || mu.contains(&0) {
        return Err(Error::InvalidArgument(format!("need {d} positive multilinear ranks, got {mu:?}")));
    }
    let pairs = check_minkowski_singly_separated(sets)?;
    let tol = eps / (d as f64).sqrt();
    let mut k_values = Vec::with_capacity(d);
    let mut conditioning = Vec::with_capacity(d);
    let mut ranks = Vec::with_capacity(d);
    for (j, pair) in pairs.iter().enumerate() {
        let k = pair.k_for_tolerance(tol)?;
        conditioning.push(pair.conditioning()?);
        k_values.push(k);
        ranks.push(k.saturating_mul(mu[j]));
    }
    Ok(BoundReport {
        format: BoundFormat::ML,
        storage_bound: ml_storage_from_ranks(&ranks, extents),
        k_values,
        conditioning,
        rank_bound_vector: ranks,
        epsilon: eps,
    })
}

/// `s_1` and the `n(s_1² + 2 s_1)` storage bound of a cubic `n × n × n`
/// problem with a rank-one right-hand side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecializedBound {
    pub k: usize,
    pub s1: usize,
    pub storage: u128,
}

fn specialized(n: usize, sixteen_gamma: f64, eps: f64) -> Result<SpecializedBound> {
    if n == 0 || !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("need n >= 1 and eps in (0, 1), got {n}, {eps}")));
    }
    let k = k_for_epsilon_interval(sixteen_gamma / 16.0, eps / 3f64.sqrt())?;
    let s1 = k as u128;
    Ok(SpecializedBound { k, s1: k, storage: n as u128 * (s1 * s1 + 2 * s1) })
}

/// Hilbert tensor: `16γ = 16n(2n−1)/(3n−2)`.
pub fn hilbert_tt_bound(n: usize, eps: f64) -> Result<SpecializedBound> {
    let nf = n as f64;
    specialized(n, 16.0 * nf * (2.0 * nf - 1.0) / (3.0 * nf - 2.0), eps)
}

/// Finite-difference Poisson: `16γ = 16(n²+2)(2n²+1)/(9n²)`.
pub fn fd_poisson_tt_bound(n: usize, eps: f64) -> Result<SpecializedBound> {
    let n2 = (n as f64).powi(2);
    specialized(n, 16.0 * (n2 + 2.0) * (2.0 * n2 + 1.0) / (9.0 * n2), eps)
}

/// Spectral Poisson: `16γ = 16(30n⁴+2)(60n⁴+1)/(270n⁴)`.
pub fn spectral_poisson_tt_bound(n: usize, eps: f64) -> Result<SpecializedBound> {
    let n4 = (n as f64).powi(4);
    specialized(n, 16.0 * (30.0 * n4 + 2.0) * (60.0 * n4 + 1.0) / (270.0 * n4), eps)
}

/// Bounds for a tensor sampled from a polynomial of degree `< N_j` in
/// variable `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyBounds {
    pub tt_ranks: Vec<u128>,
    pub tt_storage: u128,
    pub ml_storage: u128,
    pub cp_rank: u128,
    pub cp_storage: u128,
}

pub fn poly_sampling_bounds(degrees: &[usize], extents: &[usize]) -> Result<PolyBounds> {
    if degrees.len() != extents.len() || degrees.is_empty() {
        return Err(Error::DimensionMismatch("degrees and extents must have equal nonzero length".into()));
    }
    if degrees.iter().chain(extents).any(|&v| v == 0) {
        return Err(Error::InvalidArgument("degrees and extents must be positive".into()));
    }
    let d = degrees.len();
    let nn: Vec<u128> = degrees.iter().map(|&v| v as u128).collect();
    let ext: Vec<u128> = extents.iter().map(|&v| v as u128).collect();
    let total: u128 = nn.iter().product();
    let mut tt_ranks = vec![1u128; d + 1];
    for k in 1..d {
        let left: u128 = nn[..k].iter().product();
        let right: u128 = nn[k..].iter().product();
        tt_ranks[k] = left.min(right);
    }
    let tt_storage = (0..d).map(|k| tt_ranks[k] * tt_ranks[k + 1] * ext[k]).sum();
    let ml_storage = nn.iter().zip(&ext).map(|(a, b)| a * b).sum::<u128>() + total;
    let cp_rank = nn.iter().map(|&v| total / v).min().unwrap();
    let cp_storage = cp_rank + cp_rank * ext.iter().sum::<u128>();
    Ok(PolyBounds { tt_ranks, tt_storage, ml_storage, cp_rank, cp_storage })
}

/// `min_j (∏_i r_i) / r_j` where `r_i` is the rank of factor matrix `i`.
pub fn kruskal_bound(factor_ranks: &[usize]) -> Result<u128> {
    if factor_ranks.is_empty() || factor_ranks.contains(&0) {
        return Err(Error::InvalidArgument(format!("factor ranks {factor_ranks:?} must be positive")));
    }
    let total: u128 = factor_ranks.iter().map(|&r| r as u128).product();
    Ok(factor_ranks.iter().map(|&r| total / r as u128).min().unwrap())
}
