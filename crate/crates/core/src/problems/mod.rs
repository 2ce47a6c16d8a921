//! Test problems: sampled functions, the Hilbert tensor and Poisson's
//! equation on the cube.

pub mod hilbert;
pub mod poisson;
pub mod sampling;

pub use hilbert::{hilbert_displacement, hilbert_spectrum, hilbert_tensor};
pub use poisson::{
    constant_coefficients, fd_interior_points, fd_negative_laplacian, fd_negative_laplacian_at, fd_poisson,
    fd_poisson_constant, spectral_poisson, ultraspherical_values, SpectralPoissonOperators,
};
pub use sampling::{
    bump_centers, equispaced_axis, fourier_like, gaussian_bumps, random_polynomial, sample_function,
    sample_polynomial, BumpCenters, GridSpec,
};
