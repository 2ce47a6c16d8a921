//! Canonical polyadic (CP) format: weighted sums of rank-one tensors.
//! Only construction, reconstruction and storage accounting are provided.

use nalgebra::DMatrix;

use super::{check_cap, LowRankFormat};
use crate::tensor::{element_count, DenseTensor};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct CPTensor<T: Scalar> {
    weights: Vec<T>,
    factors: Vec<DMatrix<T>>,
}

impl<T: Scalar> CPTensor<T> {
    pub fn new(weights: Vec<T>, factors: Vec<DMatrix<T>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidArgument("a CP tensor needs at least one factor".into()));
        }
        let r = weights.len();
        if r == 0 {
            return Err(Error::InvalidArgument("a CP tensor needs at least one term".into()));
        }
        for (k, f) in factors.iter().enumerate() {
            if f.ncols() != r || f.nrows() == 0 {
                return Err(Error::DimensionMismatch(format!(
                    "factor {k} is {:?}, expected {r} columns",
                    f.shape()
                )));
            }
        }
        Ok(Self { weights, factors })
    }

    pub fn rank(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn factors(&self) -> &[DMatrix<T>] {
        &self.factors
    }
}

impl<T: Scalar> LowRankFormat<T> for CPTensor<T> {
    fn extents(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.nrows()).collect()
    }

    fn storage_count(&self) -> usize {
        let r = self.rank();
        r + r * self.extents().iter().sum::<usize>()
    }

    fn reconstruct_with_cap(&self, cap: usize) -> Result<DenseTensor<T>> {
        let extents = self.extents();
        check_cap(element_count(&extents)?, cap)?;
        // Khatri-Rao accumulation: columns of `acc` are the partial outer products.
        let mut acc = self.factors[0].clone();
        for f in &self.factors[1..] {
            let rows = acc.nrows();
            let mut next = DMatrix::zeros(rows * f.nrows(), self.rank());
            for t in 0..self.rank() {
                for j in 0..f.nrows() {
                    for i in 0..rows {
                        next[(i + rows * j, t)] = acc[(i, t)] * f[(j, t)];
                    }
                }
            }
            acc = next;
        }
        let w = nalgebra::DVector::from_vec(self.weights.clone());
        DenseTensor::new(extents, (acc * w).data.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruct_matches_triple_loop() {
        let a = DMatrix::from_fn(3, 2, |i, t| (i + 2 * t) as f64 - 1.0);
        let b = DMatrix::from_fn(3, 2, |i, t| ((i * t) as f64).cos());
        let c = DMatrix::from_fn(3, 2, |i, t| 0.5 * i as f64 + t as f64);
        let w = vec![2.0, -0.5];
        let cp = CPTensor::new(w.clone(), vec![a.clone(), b.clone(), c.clone()]).unwrap();
        let x = cp.reconstruct().unwrap();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    let brute: f64 = (0..2).map(|t| w[t] * a[(i, t)] * b[(j, t)] * c[(k, t)]).sum();
                    assert!((x.get(&[i, j, k]) - brute).abs() < 1e-14);
                }
            }
        }
        assert_eq!(cp.storage_count(), 2 + 2 * 9);
    }

    #[test]
    fn rejects_ragged_factors() {
        let a = DMatrix::<f64>::zeros(3, 2);
        let b = DMatrix::<f64>::zeros(3, 1);
        assert!(CPTensor::new(vec![1.0, 1.0], vec![a, b]).is_err());
    }
}
