//! Tucker format and the truncated higher-order SVD.

use nalgebra::DMatrix;

use super::tt::{tt_svd_absolute, TTTensor};
use super::{check_cap, check_tolerance, LowRankFormat};
use crate::linalg::rank_from_singular_values;
use crate::tensor::{element_count, kmode_product, matricize, DenseTensor};
use crate::{Error, Result, Scalar};

/// Core tensor of extents `(t_0, ..., t_{d-1})` and factors `n_k x t_k`
/// with orthonormal columns.
#[derive(Clone, Debug, PartialEq)]
pub struct TuckerTensor<T: Scalar> {
    core: DenseTensor<T>,
    factors: Vec<DMatrix<T>>,
}

/// Largest tolerated deviation of `Aᴴ A` from the identity.
pub const ORTHONORMALITY_TOL: f64 = 1e-12;

impl<T: Scalar> TuckerTensor<T> {
    pub fn new(core: DenseTensor<T>, factors: Vec<DMatrix<T>>) -> Result<Self> {
        if factors.len() != core.ndim() {
            return Err(Error::DimensionMismatch(format!(
                "{} factors for a core of order {}",
                factors.len(),
                core.ndim()
            )));
        }
        for (k, f) in factors.iter().enumerate() {
            if f.ncols() != core.extents()[k] || f.nrows() == 0 {
                return Err(Error::DimensionMismatch(format!(
                    "factor {k} is {:?} but the core extent is {}",
                    f.shape(),
                    core.extents()[k]
                )));
            }
            let dev = (f.adjoint() * f - DMatrix::identity(f.ncols(), f.ncols()))
                .iter()
                .map(|v| v.modulus())
                .fold(0.0, f64::max);
            if dev > ORTHONORMALITY_TOL {
                return Err(Error::InvalidArgument(format!("factor {k} is not orthonormal (deviation {dev:e})")));
            }
        }
        Ok(Self { core, factors })
    }

    pub fn core(&self) -> &DenseTensor<T> {
        &self.core
    }

    pub fn factors(&self) -> &[DMatrix<T>] {
        &self.factors
    }

    pub fn factor(&self, k: usize) -> &DMatrix<T> {
        &self.factors[k]
    }

    /// Multilinear rank `(t_0, ..., t_{d-1})`.
    pub fn ranks(&self) -> Vec<usize> {
        self.core.extents().to_vec()
    }

    pub fn ndim(&self) -> usize {
        self.factors.len()
    }

    /// Exact tensor-train form: the core is split by TT-SVD, then every
    /// factor is absorbed into its core.
    pub fn to_tt(&self) -> Result<TTTensor<T>> {
        let mut tt = tt_svd_absolute(&self.core, 0.0)?;
        for (k, f) in self.factors.iter().enumerate() {
            tt = tt.mode_product(f, k)?;
        }
        Ok(tt)
    }
}

impl<T: Scalar> LowRankFormat<T> for TuckerTensor<T> {
    fn extents(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.nrows()).collect()
    }

    fn storage_count(&self) -> usize {
        self.factors.iter().map(|f| f.len()).sum::<usize>() + self.core.len()
    }

    fn reconstruct_with_cap(&self, cap: usize) -> Result<DenseTensor<T>> {
        check_cap(element_count(&self.extents())?, cap)?;
        let mut x = self.core.clone();
        for (k, f) in self.factors.iter().enumerate() {
            x = kmode_product(&x, f, k)?;
        }
        Ok(x)
    }
}

/// Truncated HOSVD: `t_j = rank_δ(X_(j))` with `δ = eps ‖x‖_F / √d`, factors
/// are leading left singular vectors, core `x ×_j A_jᴴ`.
pub fn hosvd<T: Scalar>(x: &DenseTensor<T>, eps: f64) -> Result<TuckerTensor<T>> {
    check_tolerance(eps)?;
    let d = x.ndim();
    let delta = eps * x.frobenius_norm() / (d as f64).sqrt();
    hosvd_absolute(x, delta)
}

/// HOSVD truncating every matricization at the absolute threshold `delta`.
pub fn hosvd_absolute<T: Scalar>(x: &DenseTensor<T>, delta: f64) -> Result<TuckerTensor<T>> {
    let d = x.ndim();
    let mut factors = Vec::with_capacity(d);
    for j in 0..d {
        let m = matricize(x, j)?.matrix;
        let svd = T::thin_svd(&m)?;
        let r = rank_from_singular_values(&svd.sigma, delta).max(1);
        factors.push(if svd.sigma.is_empty() || svd.sigma[0] == 0.0 {
            let mut e = DMatrix::zeros(x.extents()[j], 1);
            e[(0, 0)] = T::one();
            e
        } else {
            svd.leading_u(r)
        });
    }
    let mut core = x.clone();
    for (j, f) in factors.iter().enumerate() {
        core = kmode_product(&core, &f.adjoint(), j)?;
    }
    TuckerTensor::new(core, factors)
}
