//! Low-rank tensor formats, Zolotarev-type compressibility bounds and
//! factored ADI solvers for three-dimensional tensor Sylvester equations.
//!
//! Tensors are stored column-major (first index fastest). Mode indices in the
//! public API are zero-based: a 3-tensor has modes 0, 1, 2. Unfolding split
//! points count modes instead, so `unfold(x, k)` places the first `k` modes in
//! the rows.

pub mod bounds;
pub mod error;
pub mod formats;
pub mod linalg;
pub mod problems;
pub mod scalar;
pub mod sylvester;
pub mod tensor;

pub use error::{Error, Result};
pub use scalar::{Scalar, ScalarKind};
pub use tensor::{DenseTensor, UnfoldingMatrix};
