//! Three-dimensional tensor Sylvester equations
//! `X ×_0 A_0 + X ×_1 A_1 + X ×_2 A_2 = F`.

use nalgebra::DMatrix;

use crate::bounds::SpectralSet;
use crate::formats::{tt_svd_absolute, LowRankFormat, TTTensor};
use crate::linalg::Operator;
use crate::tensor::DenseTensor;
use crate::{Error, Result};

/// The right-hand side is kept as a tensor train: its first core is the
/// left factor `W_1` of the first unfolding, and the first two cores contracted
/// give the left factor `W_2` of the second unfolding.
#[derive(Clone, Debug)]
pub struct SylvesterProblem3D {
    pub ops: [Operator; 3],
    pub rhs: TTTensor<f64>,
    /// Certified enclosures of `Λ(A_k)`.
    pub spectra: [SpectralSet; 3],
}

impl SylvesterProblem3D {
    pub fn new(ops: [Operator; 3], rhs: TTTensor<f64>, spectra: [SpectralSet; 3]) -> Result<Self> {
        if rhs.ndim() != 3 {
            return Err(Error::DimensionMismatch("right-hand side must be third-order".into()));
        }
        let ext = rhs.extents();
        for (k, op) in ops.iter().enumerate() {
            if op.dim() != ext[k] {
                return Err(Error::DimensionMismatch(format!(
                    "operator {k} has size {} but mode {k} has extent {}",
                    op.dim(),
                    ext[k]
                )));
            }
        }
        Ok(Self { ops, rhs, spectra })
    }

    /// Compresses a dense right-hand side to a tensor train first (relative
    /// accuracy 1e-14).
    pub fn with_dense_rhs(ops: [Operator; 3], rhs: &DenseTensor<f64>, spectra: [SpectralSet; 3]) -> Result<Self> {
        let delta = 1e-14 * rhs.frobenius_norm();
        Self::new(ops, tt_svd_absolute(rhs, delta)?, spectra)
    }

    pub fn extents(&self) -> [usize; 3] {
        let e = self.rhs.extents();
        [e[0], e[1], e[2]]
    }

    pub fn rhs_dense(&self) -> Result<DenseTensor<f64>> {
        self.rhs.reconstruct()
    }

    pub fn rhs_norm(&self) -> f64 {
        self.rhs.norm()
    }

    /// `W_1` with `F_(1) = W_1 Z_1ᵀ` (`n_0 x ν_1`).
    pub fn first_unfolding_left(&self) -> DMatrix<f64> {
        self.rhs.left_unfolding(0)
    }

    /// `Z_2` with `F_(2) = W_2 Z_2ᵀ` (`n_2 x ν_2`).
    pub fn second_unfolding_right(&self) -> DMatrix<f64> {
        self.rhs.right_unfolding(2).transpose()
    }

    /// Left factor of the mode-`k` matricization (`n_k` rows).
    pub fn matricization_left(&self, k: usize) -> DMatrix<f64> {
        match k {
            0 => self.rhs.left_unfolding(0),
            1 => {
                let c = self.rhs.core(1);
                let (r0, n, r1) = (c.extents()[0], c.extents()[1], c.extents()[2]);
                DMatrix::from_fn(n, r0 * r1, |i, col| c.get(&[col % r0, i, col / r0]))
            }
            _ => self.second_unfolding_right(),
        }
    }
}
