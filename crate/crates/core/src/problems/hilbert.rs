//! The Hilbert tensor `1/(i + j + k − 2)` (one-based indices) and its
//! displacement equation with `A_k = diag(i − 2/3)` and an all-ones right-hand
//! side.

use nalgebra::DVector;

use crate::bounds::SpectralSet;
use crate::formats::TTTensor;
use crate::linalg::{BandMatrix, Operator};
use crate::sylvester::SylvesterProblem3D;
use crate::tensor::DenseTensor;
use crate::{Error, Result};

pub fn hilbert_tensor(n: usize) -> Result<DenseTensor<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("Hilbert tensor needs n >= 1".into()));
    }
    DenseTensor::from_fn(vec![n, n, n], |i| 1.0 / (i[0] + i[1] + i[2] + 1) as f64)
}

/// Enclosure `[1/3, (3n − 2)/3]` of `diag(i − 2/3)`.
pub fn hilbert_spectrum(n: usize) -> Result<SpectralSet> {
    SpectralSet::interval(1.0 / 3.0, (3.0 * n as f64 - 2.0) / 3.0)
}

pub fn hilbert_displacement(n: usize) -> Result<SylvesterProblem3D> {
    if n == 0 {
        return Err(Error::InvalidArgument("Hilbert tensor needs n >= 1".into()));
    }
    let d: Vec<f64> = (1..=n).map(|i| i as f64 - 2.0 / 3.0).collect();
    let op = Operator::Banded(BandMatrix::diagonal(&d));
    let ones = DVector::from_element(n, 1.0);
    let rhs = TTTensor::rank_one(&[ones.clone(), ones.clone(), ones])?;
    let s = hilbert_spectrum(n)?;
    SylvesterProblem3D::new([op.clone(), op.clone(), op], rhs, [s; 3])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::LowRankFormat;
    use crate::sylvester::{residual_3d, tt_sylvester_solve_3d};

    #[test]
    fn corner_entry() {
        assert_eq!(hilbert_tensor(3).unwrap().get(&[0, 0, 0]), 1.0);
        assert_eq!(hilbert_tensor(3).unwrap().get(&[2, 2, 2]), 1.0 / 7.0);
    }

    #[test]
    fn explicit_tensor_solves_displacement() {
        let p = hilbert_displacement(20).unwrap();
        let h = hilbert_tensor(20).unwrap();
        assert!(residual_3d(&p, &h).unwrap() <= 1e-12 * p.rhs_norm());
    }

    #[test]
    fn spectrum_enclosure() {
        let p = hilbert_displacement(9).unwrap();
        let d = p.ops[0].to_dense().unwrap();
        let s = hilbert_spectrum(9).unwrap();
        assert!((0..9).all(|i| match s {
            SpectralSet::Interval { lo, hi } => d[(i, i)] >= lo - 1e-15 && d[(i, i)] <= hi + 1e-15,
            _ => false,
        }));
    }

    #[test]
    fn fadi_solution_matches_formula() {
        let p = hilbert_displacement(20).unwrap();
        let h = hilbert_tensor(20).unwrap();
        let x = tt_sylvester_solve_3d(&p, 1e-10).unwrap().reconstruct().unwrap();
        assert!(x.distance(&h).unwrap() <= 1e-10 * h.frobenius_norm());
    }
}
