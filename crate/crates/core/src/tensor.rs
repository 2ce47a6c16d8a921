//! Dense tensors and index manipulation: k-mode products, unfoldings,
//! matricizations and cyclic mode permutations.
//!
//! Data is column-major: the linear position of `(i_0, ..., i_{d-1})` is
//! `i_0 + n_0 (i_1 + n_1 (i_2 + ...))`.

use nalgebra::{DMatrix, DMatrixView, DVector};

use crate::{Error, Result, Scalar, ScalarKind};

#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor<T> {
    extents: Vec<usize>,
    data: Vec<T>,
}

/// Product of extents with overflow checking.
pub fn element_count(extents: &[usize]) -> Result<usize> {
    extents.iter().try_fold(1usize, |acc, &n| {
        acc.checked_mul(n)
            .ok_or_else(|| Error::InvalidArgument(format!("extents {extents:?} overflow usize")))
    })
}

fn check_extents(extents: &[usize]) -> Result<usize> {
    if extents.is_empty() {
        return Err(Error::InvalidArgument("a tensor needs at least one mode".into()));
    }
    if extents.contains(&0) {
        return Err(Error::InvalidArgument(format!("zero extent in {extents:?}")));
    }
    element_count(extents)
}

impl<T: Scalar> DenseTensor<T> {
    pub fn new(extents: Vec<usize>, data: Vec<T>) -> Result<Self> {
        let len = check_extents(&extents)?;
        if data.len() != len {
            return Err(Error::DimensionMismatch(format!(
                "data length {} does not match extents {:?}",
                data.len(),
                extents
            )));
        }
        Ok(Self { extents, data })
    }

    pub fn zeros(extents: Vec<usize>) -> Result<Self> {
        let len = check_extents(&extents)?;
        Ok(Self { extents, data: vec![T::zero(); len] })
    }

    /// Fills the tensor by evaluating `f` at every multi-index, in storage order.
    pub fn from_fn(extents: Vec<usize>, mut f: impl FnMut(&[usize]) -> T) -> Result<Self> {
        let len = check_extents(&extents)?;
        let mut data = Vec::with_capacity(len);
        let mut idx = vec![0usize; extents.len()];
        for _ in 0..len {
            data.push(f(&idx));
            for (i, n) in idx.iter_mut().zip(&extents) {
                *i += 1;
                if *i < *n {
                    break;
                }
                *i = 0;
            }
        }
        Ok(Self { extents, data })
    }

    /// Outer product `v_0 ∘ v_1 ∘ ... ∘ v_{d-1}`.
    pub fn outer(vectors: &[DVector<T>]) -> Result<Self> {
        let extents: Vec<usize> = vectors.iter().map(|v| v.len()).collect();
        Self::from_fn(extents, |idx| {
            idx.iter().zip(vectors).fold(T::one(), |acc, (&i, v)| acc * v[i])
        })
    }

    pub fn extents(&self) -> &[usize] {
        &self.extents
    }

    pub fn ndim(&self) -> usize {
        self.extents.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn scalar_kind(&self) -> ScalarKind {
        T::KIND
    }

    pub fn linear_index(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.extents.len());
        idx.iter()
            .zip(&self.extents)
            .rev()
            .fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.data[self.linear_index(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: T) {
        let p = self.linear_index(idx);
        self.data[p] = value;
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(self)
    }

    /// `self + alpha * other`.
    pub fn add_scaled(&self, alpha: T, other: &Self) -> Result<Self> {
        if self.extents != other.extents {
            return Err(Error::DimensionMismatch(format!(
                "extents {:?} vs {:?}",
                self.extents, other.extents
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| a + alpha * b)
            .collect();
        Ok(Self { extents: self.extents.clone(), data })
    }

    pub fn scale(&self, alpha: T) -> Self {
        Self {
            extents: self.extents.clone(),
            data: self.data.iter().map(|&a| a * alpha).collect(),
        }
    }

    /// Frobenius norm of `self - other`.
    pub fn distance(&self, other: &Self) -> Result<f64> {
        Ok(self.add_scaled(-T::one(), other)?.frobenius_norm())
    }
}

pub fn frobenius_norm<T: Scalar>(x: &DenseTensor<T>) -> f64 {
    x.data.iter().map(|v| v.modulus_squared()).sum::<f64>().sqrt()
}

/// Which flattening produced an [`UnfoldingMatrix`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flattening {
    /// First `split` modes index the rows.
    Unfolding { split: usize },
    /// Fibers of `mode` are the columns, cyclic column order.
    Matricization { mode: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnfoldingMatrix<T: Scalar> {
    pub matrix: DMatrix<T>,
    pub source: Flattening,
}

impl<T: Scalar> UnfoldingMatrix<T> {
    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }
}

fn check_mode(d: usize, k: usize) -> Result<()> {
    if k >= d {
        return Err(Error::InvalidArgument(format!("mode {k} out of range for a {d}-tensor")));
    }
    Ok(())
}

/// Sizes `(left, n_k, right)` of the three-way view around mode `k`.
pub(crate) fn mode_split(extents: &[usize], k: usize) -> (usize, usize, usize) {
    let left = extents[..k].iter().product();
    let right = extents[k + 1..].iter().product();
    (left, extents[k], right)
}

/// `x ×_k a`: every mode-`k` fiber is multiplied by `a` (`m x n_k`).
pub fn kmode_product<T: Scalar>(x: &DenseTensor<T>, a: &DMatrix<T>, k: usize) -> Result<DenseTensor<T>> {
    check_mode(x.ndim(), k)?;
    let (left, nk, right) = mode_split(&x.extents, k);
    if a.ncols() != nk {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} columns but mode {k} has extent {nk}",
            a.ncols()
        )));
    }
    let m = a.nrows();
    if m == 0 {
        return Err(Error::DimensionMismatch("mode product with an empty matrix".into()));
    }
    let mut extents = x.extents.clone();
    extents[k] = m;
    let mut data = vec![T::zero(); left * m * right];
    if left == 1 {
        let xs = DMatrixView::from_slice(&x.data, nk, right);
        let out = a * xs;
        data.copy_from_slice(out.as_slice());
    } else {
        let at = a.transpose();
        for r in 0..right {
            let xs = DMatrixView::from_slice(&x.data[r * left * nk..(r + 1) * left * nk], left, nk);
            let out = xs * &at;
            data[r * left * m..(r + 1) * left * m].copy_from_slice(out.as_slice());
        }
    }
    Ok(DenseTensor { extents, data })
}

/// The `k`-th unfolding: rows indexed by modes `0..k`, columns by `k..d`.
pub fn unfold<T: Scalar>(x: &DenseTensor<T>, k: usize) -> Result<UnfoldingMatrix<T>> {
    let d = x.ndim();
    if k == 0 || k >= d {
        return Err(Error::InvalidArgument(format!(
            "unfolding split {k} must lie in 1..{} for a {d}-tensor",
            d.saturating_sub(1)
        )));
    }
    let rows = x.extents[..k].iter().product();
    let cols = x.extents[k..].iter().product();
    Ok(UnfoldingMatrix {
        matrix: DMatrix::from_column_slice(rows, cols, &x.data),
        source: Flattening::Unfolding { split: k },
    })
}

/// Reinterprets a matrix as a tensor with the given extents.
pub fn fold<T: Scalar>(m: &DMatrix<T>, extents: &[usize]) -> Result<DenseTensor<T>> {
    DenseTensor::new(extents.to_vec(), m.as_slice().to_vec())
}

/// Reorders modes so that result mode `m` is source mode `order[m]`.
pub fn permute_modes<T: Scalar>(x: &DenseTensor<T>, order: &[usize]) -> Result<DenseTensor<T>> {
    let d = x.ndim();
    let mut seen = vec![false; d];
    if order.len() != d || order.iter().any(|&o| o >= d || std::mem::replace(&mut seen[o], true)) {
        return Err(Error::InvalidArgument(format!("{order:?} is not a permutation of 0..{d}")));
    }
    let extents: Vec<usize> = order.iter().map(|&o| x.extents[o]).collect();
    // Stride in the source for each result mode.
    let mut src_strides = vec![1usize; d];
    for k in 1..d {
        src_strides[k] = src_strides[k - 1] * x.extents[k - 1];
    }
    let strides: Vec<usize> = order.iter().map(|&o| src_strides[o]).collect();
    let len = x.len();
    let mut data = Vec::with_capacity(len);
    let mut idx = vec![0usize; d];
    let mut pos = 0usize;
    for _ in 0..len {
        data.push(x.data[pos]);
        for m in 0..d {
            idx[m] += 1;
            pos += strides[m];
            if idx[m] < extents[m] {
                break;
            }
            pos -= strides[m] * extents[m];
            idx[m] = 0;
        }
    }
    Ok(DenseTensor { extents, data })
}

/// Tensor with modes reordered to `(j, j+1, ..., d-1, 0, ..., j-1)`.
pub fn cyclic_permute<T: Scalar>(x: &DenseTensor<T>, j: usize) -> Result<DenseTensor<T>> {
    let d = x.ndim();
    check_mode(d, j)?;
    let order: Vec<usize> = (0..d).map(|m| (m + j) % d).collect();
    permute_modes(x, &order)
}

/// Mode-`n` matricization with the cyclic column order: equal to
/// `unfold(cyclic_permute(x, n), 1)`.
pub fn matricize<T: Scalar>(x: &DenseTensor<T>, n: usize) -> Result<UnfoldingMatrix<T>> {
    let d = x.ndim();
    check_mode(d, n)?;
    let rows = x.extents[n];
    let cols = x.len() / rows;
    let matrix = if n == 0 {
        DMatrix::from_column_slice(rows, cols, &x.data)
    } else {
        let y = cyclic_permute(x, n)?;
        DMatrix::from_vec(rows, cols, y.data)
    };
    Ok(UnfoldingMatrix { matrix, source: Flattening::Matricization { mode: n } })
}
