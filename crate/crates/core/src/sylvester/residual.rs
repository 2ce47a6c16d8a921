//! `‖Σ_k x ×_k A_k − F‖_F` for dense, tensor-train and Tucker solutions.

use super::problem::SylvesterProblem3D;
use crate::formats::{TTTensor, TuckerTensor};
use crate::tensor::DenseTensor;
use crate::{Error, Result};

/// Anything `residual_3d` can evaluate.
pub trait ResidualTarget {
    fn residual(&self, p: &SylvesterProblem3D) -> Result<f64>;
}

impl ResidualTarget for DenseTensor<f64> {
    fn residual(&self, p: &SylvesterProblem3D) -> Result<f64> {
        if self.extents() != p.extents() {
            return Err(Error::DimensionMismatch("solution and problem extents differ".into()));
        }
        let mut acc = p.rhs_dense()?.scale(-1.0);
        for (k, op) in p.ops.iter().enumerate() {
            acc = acc.add_scaled(1.0, &op.apply_mode(self, k)?)?;
        }
        Ok(acc.frobenius_norm())
    }
}

impl ResidualTarget for TTTensor<f64> {
    /// Operators are applied core by core; the sum is a train of ranks
    /// `3s + ν` whose norm is taken without reconstruction.
    fn residual(&self, p: &SylvesterProblem3D) -> Result<f64> {
        use crate::formats::LowRankFormat;
        if self.extents() != p.extents() {
            return Err(Error::DimensionMismatch("solution and problem extents differ".into()));
        }
        let mut acc = p.rhs.scale(-1.0);
        for (k, op) in p.ops.iter().enumerate() {
            acc = acc.add(&self.apply_operator(op, k)?)?;
        }
        Ok(acc.norm())
    }
}

impl ResidualTarget for TuckerTensor<f64> {
    fn residual(&self, p: &SylvesterProblem3D) -> Result<f64> {
        self.to_tt()?.residual(p)
    }
}

pub fn residual_3d<X: ResidualTarget + ?Sized>(p: &SylvesterProblem3D, x: &X) -> Result<f64> {
    x.residual(p)
}
