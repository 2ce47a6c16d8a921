//! Closed-form compressibility bounds: Zolotarev numbers for interval and
//! disk pairs, Minkowski separation, TT and multilinear storage bounds,
//! polynomial and Gaussian-bump bounds.

pub mod bessel;
pub mod bumps;
pub mod spectral;
pub mod storage;
pub mod zolotarev;

pub use bessel::{bessel_i, bessel_i_scaled};
pub use bumps::{gaussian_bump_bound, BumpBound};
pub use spectral::{
    check_minkowski_singly_separated, check_minkowski_sum_separated, interval_cross_ratio, Conditioning, Region,
    SeparatedPair, SpectralSet,
};
pub use storage::{
    fd_poisson_tt_bound, hilbert_tt_bound, kruskal_bound, ml_storage_bound, ml_storage_from_ranks,
    poly_sampling_bounds, spectral_poisson_tt_bound, tt_storage_bound, tt_storage_from_ranks, BoundFormat,
    BoundReport, PolyBounds, SpecializedBound,
};
pub use zolotarev::{
    disk_pair_rho, disk_rho, gamma_interval, gamma_interval_single, k_for_epsilon_disk, k_for_epsilon_interval,
    rho_power_bound, zolotarev_disk_bound, zolotarev_interval_bound,
};
