//! Linear-algebra building blocks: dense factorizations, band matrices,
//! structured operators and tridiagonal eigenvalues.

pub mod banded;
pub mod dense;
pub mod operator;
pub mod tridiagonal;

pub use banded::{BandLu, BandMatrix};
pub use dense::Svd;
pub use operator::Operator;

use nalgebra::DMatrix;

use crate::Scalar;

/// Smallest `r` whose Frobenius tail `(Σ_{j>r} σ_j²)^{1/2}` is at most `delta`.
/// Singular values below `1e-15 σ_max` count as zero.
pub fn rank_from_singular_values(sigma: &[f64], delta: f64) -> usize {
    let smax = sigma.first().copied().unwrap_or(0.0);
    let floor = 1e-15 * smax;
    let mut r = sigma.iter().take_while(|&&s| s > floor).count();
    let mut tail = 0.0f64;
    while r > 0 {
        let s = sigma[r - 1];
        if (tail + s * s).sqrt() > delta {
            break;
        }
        tail += s * s;
        r -= 1;
    }
    r
}

/// Frobenius-norm numerical rank of a matrix.
pub fn numerical_rank<T: Scalar>(m: &DMatrix<T>, delta: f64) -> crate::Result<usize> {
    let svd = T::thin_svd(m)?;
    Ok(rank_from_singular_values(&svd.sigma, delta))
}
