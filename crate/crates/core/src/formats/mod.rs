//! Compressed tensor formats (tensor train, Tucker, CP), their storage
//! counts, reconstruction and the TT-SVD / HOSVD compression algorithms.

pub mod cp;
pub mod io;
pub mod tt;
pub mod tucker;

pub use cp::CPTensor;
pub use tt::{tt_svd, tt_svd_absolute, TTTensor};
pub use tucker::{hosvd, hosvd_absolute, TuckerTensor};

pub use crate::linalg::numerical_rank;

use crate::tensor::DenseTensor;
use crate::{Error, Result, Scalar};

/// Default largest element count `reconstruct` will materialize.
pub const DEFAULT_RECONSTRUCT_CAP: usize = 1 << 27;

pub trait LowRankFormat<T: Scalar> {
    fn extents(&self) -> Vec<usize>;

    /// Number of stored scalars.
    fn storage_count(&self) -> usize;

    fn reconstruct_with_cap(&self, cap: usize) -> Result<DenseTensor<T>>;

    fn reconstruct(&self) -> Result<DenseTensor<T>> {
        self.reconstruct_with_cap(DEFAULT_RECONSTRUCT_CAP)
    }
}

pub(crate) fn check_cap(requested: usize, cap: usize) -> Result<()> {
    if requested > cap {
        return Err(Error::SizeCap { requested, cap });
    }
    Ok(())
}

pub(crate) fn check_tolerance(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("relative tolerance {eps} must lie in (0, 1)")));
    }
    Ok(())
}
