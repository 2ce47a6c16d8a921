//! Real square operators with cheap shifted solves.

use nalgebra::DMatrix;

use super::banded::BandMatrix;
use super::dense::lu_solve;
use crate::tensor::{kmode_product, mode_split, DenseTensor};
use crate::{Error, Result, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum Operator {
    Dense(DMatrix<f64>),
    Banded(BandMatrix),
    /// `diag(left) * inner⁻¹ * diag(right)` with a banded `inner`; shifted
    /// solves stay banded because `(A + σI)x = b` becomes
    /// `(diag(right·left) + σ inner) w = right·b`, `x = right⁻¹ inner w`.
    ScaledInverse { inner: BandMatrix, left: Vec<f64>, right: Vec<f64> },
}

impl Operator {
    pub fn dense(m: DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch(format!("operator must be square, got {:?}", m.shape())));
        }
        Ok(Operator::Dense(m))
    }

    pub fn scaled_inverse(inner: BandMatrix, left: Vec<f64>, right: Vec<f64>) -> Result<Self> {
        let n = inner.dim();
        if left.len() != n || right.len() != n {
            return Err(Error::DimensionMismatch("scaling vectors must match the band matrix".into()));
        }
        if right.iter().any(|&r| r == 0.0) {
            return Err(Error::InvalidArgument("right scaling must be nonzero".into()));
        }
        Ok(Operator::ScaledInverse { inner, left, right })
    }

    pub fn dim(&self) -> usize {
        match self {
            Operator::Dense(m) => m.nrows(),
            Operator::Banded(b) => b.dim(),
            Operator::ScaledInverse { inner, .. } => inner.dim(),
        }
    }

    /// `(lower, upper)` bandwidth when the operator is stored banded.
    pub fn bandwidth(&self) -> Option<(usize, usize)> {
        match self {
            Operator::Banded(b) => Some((b.lower_bandwidth(), b.upper_bandwidth())),
            _ => None,
        }
    }

    /// `self * x`.
    pub fn apply<T: Scalar>(&self, x: &DMatrix<T>) -> Result<DMatrix<T>> {
        if x.nrows() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "operator of size {} applied to {} rows",
                self.dim(),
                x.nrows()
            )));
        }
        Ok(match self {
            Operator::Dense(m) => m.map(T::from_real) * x,
            Operator::Banded(b) => b.apply(x),
            Operator::ScaledInverse { inner, left, right } => {
                let mut y = scale_rows(x, right);
                inner.factor::<T>()?.solve_in_place(&mut y);
                scale_rows(&y, left)
            }
        })
    }

    /// Solves `(self + shift I) x = rhs`.
    pub fn solve_shifted<T: Scalar>(&self, shift: T, rhs: &DMatrix<T>) -> Result<DMatrix<T>> {
        let n = self.dim();
        if rhs.nrows() != n {
            return Err(Error::DimensionMismatch(format!("rhs has {} rows, operator {n}", rhs.nrows())));
        }
        match self {
            Operator::Dense(m) => {
                let a = m.map(T::from_real) + DMatrix::identity(n, n) * shift;
                lu_solve(&a, rhs)
            }
            Operator::Banded(b) => Ok(b.factor_shifted(None, shift)?.solve(rhs)),
            Operator::ScaledInverse { inner, left, right } => {
                let rl: Vec<T> = right.iter().zip(left).map(|(r, l)| T::from_real(r * l)).collect();
                let mut w = scale_rows(rhs, right);
                inner.factor_combination(shift, &rl)?.solve_in_place(&mut w);
                let inv_r: Vec<f64> = right.iter().map(|v| 1.0 / v).collect();
                Ok(scale_rows(&inner.apply(&w), &inv_r))
            }
        }
    }

    pub fn transpose(&self) -> Operator {
        match self {
            Operator::Dense(m) => Operator::Dense(m.transpose()),
            Operator::Banded(b) => Operator::Banded(b.transpose()),
            Operator::ScaledInverse { inner, left, right } => Operator::ScaledInverse {
                inner: inner.transpose(),
                left: right.clone(),
                right: left.clone(),
            },
        }
    }

    /// Solves `(selfᵀ + shift I) x = rhs`.
    pub fn solve_shifted_transpose<T: Scalar>(&self, shift: T, rhs: &DMatrix<T>) -> Result<DMatrix<T>> {
        if self.is_symmetric() {
            self.solve_shifted(shift, rhs)
        } else {
            self.transpose().solve_shifted(shift, rhs)
        }
    }

    pub fn to_dense(&self) -> Result<DMatrix<f64>> {
        match self {
            Operator::Dense(m) => Ok(m.clone()),
            Operator::Banded(b) => Ok(b.to_dense()),
            Operator::ScaledInverse { .. } => self.apply(&DMatrix::<f64>::identity(self.dim(), self.dim())),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        match self {
            Operator::Dense(m) => super::dense::is_symmetric(m, 0.0),
            Operator::Banded(b) => b.is_symmetric(),
            Operator::ScaledInverse { inner, left, right } => inner.is_symmetric() && left == right,
        }
    }

    /// Nonzero entries as `(row, col, value)`.
    pub fn triplets(&self) -> Result<Vec<(usize, usize, f64)>> {
        match self {
            Operator::Banded(b) => Ok(b.triplets()),
            _ => {
                let m = self.to_dense()?;
                let mut out = Vec::new();
                for j in 0..m.ncols() {
                    for i in 0..m.nrows() {
                        if m[(i, j)] != 0.0 {
                            out.push((i, j, m[(i, j)]));
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// `x ×_k self`: applies the operator to every mode-`k` fiber.
    pub fn apply_mode<T: Scalar>(&self, x: &DenseTensor<T>, k: usize) -> Result<DenseTensor<T>> {
        if k >= x.ndim() {
            return Err(Error::InvalidArgument(format!("mode {k} out of range")));
        }
        if let Operator::Dense(m) = self {
            return kmode_product(x, &m.map(T::from_real), k);
        }
        let (left, n, right) = mode_split(x.extents(), k);
        if n != self.dim() {
            return Err(Error::DimensionMismatch(format!("mode {k} has extent {n}, operator {}", self.dim())));
        }
        let data = x.data();
        let fibers = DMatrix::from_fn(n, left * right, |i, c| data[c % left + left * (i + n * (c / left))]);
        let y = self.apply(&fibers)?;
        let mut out = data.to_vec();
        for c in 0..left * right {
            for i in 0..n {
                out[c % left + left * (i + n * (c / left))] = y[(i, c)];
            }
        }
        DenseTensor::new(x.extents().to_vec(), out)
    }

    /// `uᵀ self u` for a basis `u` with `dim` rows.
    pub fn project(&self, u: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        Ok(u.transpose() * self.apply(u)?)
    }
}

fn scale_rows<T: Scalar>(x: &DMatrix<T>, s: &[f64]) -> DMatrix<T> {
    DMatrix::from_fn(x.nrows(), x.ncols(), |i, j| x[(i, j)] * T::from_real(s[i]))
}
