//! Tensor-train format and the sequential TT-SVD.

use nalgebra::{DMatrix, DVector};

use super::{check_cap, check_tolerance, LowRankFormat};
use crate::linalg::{rank_from_singular_values, Operator};
use crate::tensor::{element_count, DenseTensor};
use crate::{Error, Result, Scalar};

/// Tensor train: core `k` is a third-order array `s_{k-1} x n_k x s_k`
/// stored column-major, with `s_0 = s_d = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct TTTensor<T: Scalar> {
    cores: Vec<DenseTensor<T>>,
}

impl<T: Scalar> TTTensor<T> {
    pub fn new(cores: Vec<DenseTensor<T>>) -> Result<Self> {
        if cores.is_empty() {
            return Err(Error::InvalidArgument("a tensor train needs at least one core".into()));
        }
        let mut prev = 1;
        for (k, c) in cores.iter().enumerate() {
            if c.ndim() != 3 {
                return Err(Error::DimensionMismatch(format!("core {k} is not third-order")));
            }
            if c.extents()[0] != prev {
                return Err(Error::DimensionMismatch(format!(
                    "core {k} has leading rank {} but the previous trailing rank is {prev}",
                    c.extents()[0]
                )));
            }
            prev = c.extents()[2];
        }
        if prev != 1 {
            return Err(Error::DimensionMismatch("the last core must have trailing rank 1".into()));
        }
        Ok(Self { cores })
    }

    /// Builds a core from a column-major `(left, extent, right)` buffer.
    pub fn core_from_vec(left: usize, extent: usize, right: usize, data: Vec<T>) -> Result<DenseTensor<T>> {
        DenseTensor::new(vec![left, extent, right], data)
    }

    /// The all-zero tensor stored with unit ranks.
    pub fn zeros(extents: &[usize]) -> Result<Self> {
        let cores = extents
            .iter()
            .map(|&n| DenseTensor::zeros(vec![1, n, 1]))
            .collect::<Result<Vec<_>>>()?;
        Self::new(cores)
    }

    /// `v_0 ∘ v_1 ∘ ...` as a rank-one train.
    pub fn rank_one(vectors: &[DVector<T>]) -> Result<Self> {
        let cores = vectors
            .iter()
            .map(|v| DenseTensor::new(vec![1, v.len(), 1], v.as_slice().to_vec()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(cores)
    }

    pub fn ndim(&self) -> usize {
        self.cores.len()
    }

    pub fn cores(&self) -> &[DenseTensor<T>] {
        &self.cores
    }

    pub fn core(&self, k: usize) -> &DenseTensor<T> {
        &self.cores[k]
    }

    pub fn into_cores(self) -> Vec<DenseTensor<T>> {
        self.cores
    }

    /// `(s_0, ..., s_d)`.
    pub fn ranks(&self) -> Vec<usize> {
        std::iter::once(1).chain(self.cores.iter().map(|c| c.extents()[2])).collect()
    }

    /// Entry at a multi-index, by multiplying core slices.
    pub fn entry(&self, idx: &[usize]) -> T {
        assert_eq!(idx.len(), self.ndim());
        let mut row = vec![T::one()];
        for (c, &i) in self.cores.iter().zip(idx) {
            let (l, _, r) = (c.extents()[0], c.extents()[1], c.extents()[2]);
            let mut next = vec![T::zero(); r];
            for (b, nb) in next.iter_mut().enumerate() {
                for (a, &ra) in row.iter().enumerate().take(l) {
                    *nb += ra * c.get(&[a, i, b]);
                }
            }
            row = next;
        }
        row[0]
    }

    /// Core `k` reshaped to `(s_{k-1} n_k) x s_k`.
    pub fn left_unfolding(&self, k: usize) -> DMatrix<T> {
        let e = self.cores[k].extents();
        DMatrix::from_column_slice(e[0] * e[1], e[2], self.cores[k].data())
    }

    /// Core `k` reshaped to `s_{k-1} x (n_k s_k)`.
    pub fn right_unfolding(&self, k: usize) -> DMatrix<T> {
        let e = self.cores[k].extents();
        DMatrix::from_column_slice(e[0], e[1] * e[2], self.cores[k].data())
    }

    /// Sum of two trains with equal extents; ranks add.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.extents() != other.extents() {
            return Err(Error::DimensionMismatch("tensor trains with different extents".into()));
        }
        let d = self.ndim();
        if d == 1 {
            let c = self.cores[0].add_scaled(T::one(), &other.cores[0])?;
            return Self::new(vec![c]);
        }
        let mut cores = Vec::with_capacity(d);
        for k in 0..d {
            let a = &self.cores[k];
            let b = &other.cores[k];
            let (la, n, ra) = (a.extents()[0], a.extents()[1], a.extents()[2]);
            let (lb, rb) = (b.extents()[0], b.extents()[2]);
            let l = if k == 0 { 1 } else { la + lb };
            let r = if k == d - 1 { 1 } else { ra + rb };
            let mut c = DenseTensor::zeros(vec![l, n, r])?;
            let (loff, roff) = (if k == 0 { 0 } else { la }, if k == d - 1 { 0 } else { ra });
            for j in 0..n {
                for p in 0..la {
                    for q in 0..ra {
                        c.set(&[p, j, q], a.get(&[p, j, q]));
                    }
                }
                for p in 0..lb {
                    for q in 0..rb {
                        c.set(&[loff + p, j, roff + q], b.get(&[p, j, q]));
                    }
                }
            }
            cores.push(c);
        }
        Self::new(cores)
    }

    pub fn scale(&self, alpha: T) -> Self {
        let mut cores = self.cores.clone();
        cores[0] = cores[0].scale(alpha);
        Self { cores }
    }

    /// Frobenius norm via a left-to-right QR sweep (no reconstruction).
    pub fn norm(&self) -> f64 {
        let mut r = DMatrix::<T>::identity(1, 1);
        for k in 0..self.ndim() {
            let e = self.cores[k].extents();
            let m = &r * self.right_unfolding(k);
            let rows = r.nrows();
            let m = DMatrix::from_column_slice(rows * e[1], e[2], m.as_slice());
            if k + 1 == self.ndim() {
                return m.norm();
            }
            r = T::thin_qr(&m).1;
        }
        unreachable!()
    }

    /// Re-compresses to relative accuracy `eps`, with the per-split threshold
    /// `eps ‖x‖_F / √d` as in [`tt_svd`].
    pub fn round(&self, eps: f64) -> Result<Self> {
        check_tolerance(eps)?;
        let (ortho, norm) = self.right_orthogonalized()?;
        ortho.truncate_left_to_right(eps * norm / (self.ndim() as f64).sqrt())
    }

    /// Re-compresses with an absolute per-split threshold.
    pub fn round_absolute(&self, delta: f64) -> Result<Self> {
        self.right_orthogonalized()?.0.truncate_left_to_right(delta)
    }

    /// Right-to-left QR sweep leaving cores `1..d` with orthonormal rows;
    /// returns the train and its norm.
    fn right_orthogonalized(&self) -> Result<(Self, f64)> {
        let d = self.ndim();
        let mut cores = self.cores.clone();
        for k in (1..d).rev() {
            let e = cores[k].extents().to_vec();
            let g = DMatrix::from_column_slice(e[0], e[1] * e[2], cores[k].data());
            let (q, r) = T::thin_qr(&g.adjoint());
            let rank = q.ncols();
            cores[k] = DenseTensor::new(vec![rank, e[1], e[2]], q.adjoint().data.into())?;
            let p = cores[k - 1].extents().to_vec();
            let left = DMatrix::from_column_slice(p[0] * p[1], p[2], cores[k - 1].data()) * r.adjoint();
            cores[k - 1] = DenseTensor::new(vec![p[0], p[1], rank], left.data.into())?;
        }
        let norm = cores[0].frobenius_norm();
        Ok((Self::new(cores)?, norm))
    }

    fn truncate_left_to_right(mut self, delta: f64) -> Result<Self> {
        let d = self.ndim();
        if self.cores[0].frobenius_norm() == 0.0 {
            return Self::zeros(&self.extents());
        }
        for k in 0..d - 1 {
            let e = self.cores[k].extents().to_vec();
            let svd = T::thin_svd(&self.left_unfolding(k))?;
            let r = rank_from_singular_values(&svd.sigma, delta).max(1);
            self.cores[k] = DenseTensor::new(vec![e[0], e[1], r], svd.leading_u(r).data.into())?;
            let next = svd.leading_sv_adjoint(r) * self.right_unfolding(k + 1);
            let n = self.cores[k + 1].extents().to_vec();
            self.cores[k + 1] = DenseTensor::new(vec![r, n[1], n[2]], next.data.into())?;
        }
        Ok(self)
    }

    /// Applies `op` along mode `k`: the train of `x ×_k op`.
    pub fn apply_operator(&self, op: &Operator, k: usize) -> Result<Self> {
        let mut cores = self.cores.clone();
        cores[k] = op.apply_mode(&self.cores[k], 1)?;
        Self::new(cores)
    }

    /// Contracts mode `k` with a matrix: the train of `x ×_k a`.
    pub fn mode_product(&self, a: &DMatrix<T>, k: usize) -> Result<Self> {
        let mut cores = self.cores.clone();
        cores[k] = crate::tensor::kmode_product(&self.cores[k], a, 1)?;
        Self::new(cores)
    }
}

impl<T: Scalar> LowRankFormat<T> for TTTensor<T> {
    fn extents(&self) -> Vec<usize> {
        self.cores.iter().map(|c| c.extents()[1]).collect()
    }

    fn storage_count(&self) -> usize {
        self.cores.iter().map(|c| c.len()).sum()
    }

    fn reconstruct_with_cap(&self, cap: usize) -> Result<DenseTensor<T>> {
        let extents = self.extents();
        check_cap(element_count(&extents)?, cap)?;
        let mut acc = DMatrix::from_column_slice(extents[0], self.cores[0].extents()[2], self.cores[0].data());
        for k in 1..self.ndim() {
            let prod = &acc * self.right_unfolding(k);
            let e = self.cores[k].extents();
            acc = DMatrix::from_vec(acc.nrows() * e[1], e[2], prod.data.into());
        }
        DenseTensor::new(extents, acc.data.into())
    }
}

/// TT-SVD with relative tolerance `eps`: every split uses the absolute
/// threshold `δ = eps ‖x‖_F / √d`, so `‖x − x̃‖_F ≤ eps ‖x‖_F`.
pub fn tt_svd<T: Scalar>(x: &DenseTensor<T>, eps: f64) -> Result<TTTensor<T>> {
    check_tolerance(eps)?;
    let d = x.ndim();
    let delta = eps * x.frobenius_norm() / (d as f64).sqrt();
    tt_svd_absolute(x, delta)
}

/// TT-SVD truncating each split at the absolute Frobenius threshold `delta`.
pub fn tt_svd_absolute<T: Scalar>(x: &DenseTensor<T>, delta: f64) -> Result<TTTensor<T>> {
    let extents = x.extents().to_vec();
    let d = extents.len();
    if x.frobenius_norm() == 0.0 {
        return TTTensor::zeros(&extents);
    }
    let mut cores = Vec::with_capacity(d);
    let mut rest = x.data().to_vec();
    let mut left = 1usize;
    for k in 0..d.saturating_sub(1) {
        let rows = left * extents[k];
        let cols = rest.len() / rows;
        let m = DMatrix::from_vec(rows, cols, rest);
        let svd = T::thin_svd(&m)?;
        let r = rank_from_singular_values(&svd.sigma, delta).max(1);
        let u = svd.leading_u(r);
        cores.push(DenseTensor::new(vec![left, extents[k], r], u.data.into())?);
        rest = svd.leading_sv_adjoint(r).data.into();
        left = r;
    }
    cores.push(DenseTensor::new(vec![left, extents[d - 1], 1], rest)?);
    TTTensor::new(cores)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::unfold;
    use num_complex::Complex64;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid(n: usize) -> Vec<f64> {
        (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect()
    }

    fn random_tensor(ext: &[usize], seed: u64) -> DenseTensor<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        DenseTensor::from_fn(ext.to_vec(), |_| rng.random_range(-1.0..1.0)).unwrap()
    }

    #[test]
    fn rank_one_input_gives_unit_ranks() {
        let v = |n: usize, s: f64| DVector::from_fn(n, |i, _| 1.0 + s * i as f64);
        let x = DenseTensor::outer(&[v(4, 0.5), v(5, -0.2), v(3, 2.0)]).unwrap();
        for eps in [1e-1, 1e-8, 1e-14] {
            assert_eq!(tt_svd(&x, eps).unwrap().ranks(), vec![1, 1, 1, 1]);
        }
    }

    #[test]
    fn tan_example_ranks() {
        let g = grid(20);
        let x = DenseTensor::from_fn(vec![20, 20, 20], |i| {
            let (a, b, c) = (g[i[0]], g[i[1]], g[i[2]]);
            1.0 + a.tan() * b + b * b * c.powi(3)
        })
        .unwrap();
        let tt = tt_svd(&x, 1e-12).unwrap();
        let r = tt.ranks();
        assert!(r[1] <= 2 && r[2] <= 2, "{r:?}");
        assert!(tt.storage_count() <= 8 * 20);
    }

    #[test]
    fn random_cube_near_exact() {
        let x = random_tensor(&[6, 6, 6], 11);
        let tt = tt_svd(&x, 1e-12).unwrap();
        let r = tt.ranks();
        assert!(r[1] <= 6 && r[2] <= 6);
        let err = tt.reconstruct().unwrap().distance(&x).unwrap();
        assert!(err <= 1e-13 * x.frobenius_norm(), "{err}");
    }

    #[test]
    fn rejects_bad_tolerance() {
        let x = random_tensor(&[2, 2], 1);
        assert!(tt_svd(&x, 0.0).is_err());
        assert!(tt_svd(&x, 1.0).is_err());
    }

    #[test]
    fn zero_and_vector_inputs() {
        let z = DenseTensor::<f64>::zeros(vec![3, 4, 2]).unwrap();
        let tt = tt_svd(&z, 1e-3).unwrap();
        assert_eq!(tt.ranks(), vec![1, 1, 1, 1]);
        assert_eq!(tt.reconstruct().unwrap(), z);
        let v = random_tensor(&[5], 3);
        let tt = tt_svd(&v, 1e-3).unwrap();
        assert_eq!(tt.reconstruct().unwrap(), v);
    }

    #[test]
    fn complex_round_trip() {
        let g = grid(9);
        let x = DenseTensor::from_fn(vec![9, 9, 9], |i| {
            Complex64::new(0.0, 3.0 * g[i[0]] * g[i[1]] * g[i[2]]).exp()
        })
        .unwrap();
        let tt = tt_svd(&x, 1e-10).unwrap();
        let err = tt.reconstruct().unwrap().distance(&x).unwrap();
        assert!(err <= 1e-10 * x.frobenius_norm());
    }

    #[test]
    fn entry_add_norm_and_operator() {
        let x = random_tensor(&[3, 4, 5], 5);
        let y = random_tensor(&[3, 4, 5], 6);
        let tx = tt_svd(&x, 1e-14).unwrap();
        let ty = tt_svd(&y, 1e-14).unwrap();
        assert!((tx.entry(&[2, 1, 3]) - x.get(&[2, 1, 3])).abs() < 1e-12);
        let sum = tx.add(&ty).unwrap();
        let dense_sum = x.add_scaled(1.0, &y).unwrap();
        assert!(sum.reconstruct().unwrap().distance(&dense_sum).unwrap() < 1e-12);
        assert!((sum.norm() - dense_sum.frobenius_norm()).abs() < 1e-12 * dense_sum.frobenius_norm());
        let diff = tx.add(&tx.scale(-1.0)).unwrap();
        assert!(diff.norm() < 1e-14 * x.frobenius_norm());
        let a = DMatrix::from_fn(4, 4, |i, j| (i as f64 + 1.0) / (j as f64 + 2.0));
        let via_tt = tx.apply_operator(&Operator::Dense(a.clone()), 1).unwrap().reconstruct().unwrap();
        let dense = crate::tensor::kmode_product(&x, &a, 1).unwrap();
        assert!(via_tt.distance(&dense).unwrap() < 1e-12 * dense.frobenius_norm());
    }

    #[test]
    fn reconstruct_cap() {
        let tt = TTTensor::<f64>::zeros(&[10, 10, 10]).unwrap();
        assert!(matches!(tt.reconstruct_with_cap(999), Err(Error::SizeCap { .. })));
        assert!(tt.reconstruct_with_cap(1000).is_ok());
    }

    #[test]
    fn ranks_bounded_by_unfolding_ranks() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..20 {
            // sum of a few rank-one terms so unfolding ranks are nontrivial
            let terms = rng.random_range(1..4);
            let mut x = DenseTensor::<f64>::zeros(vec![5, 6, 4]).unwrap();
            for _ in 0..terms {
                let vs: Vec<DVector<f64>> =
                    [5, 6, 4].iter().map(|&n| DVector::from_fn(n, |_, _| rng.random_range(-1.0..1.0))).collect();
                x = x.add_scaled(1.0, &DenseTensor::outer(&vs).unwrap()).unwrap();
            }
            let tt = tt_svd(&x, 1e-12).unwrap();
            for k in 1..3 {
                let s = svd_rank(&unfold(&x, k).unwrap().matrix);
                assert!(tt.ranks()[k] <= s);
            }
        }
    }

    #[test]
    fn rounding_recovers_redundant_sum() {
        let x = random_tensor(&[4, 5, 6], 3);
        let tt = tt_svd(&x, 1e-3).unwrap();
        let doubled = tt.add(&tt).unwrap();
        assert_eq!(doubled.ranks()[1], 2 * tt.ranks()[1]);
        let r = doubled.round(1e-12).unwrap();
        assert!(r.ranks().iter().zip(tt.ranks()).all(|(a, b)| *a <= b));
        let want = tt.reconstruct().unwrap().scale(2.0);
        assert!(r.reconstruct().unwrap().distance(&want).unwrap() < 1e-11 * want.frobenius_norm());
        let z = TTTensor::<f64>::zeros(&[3, 3]).unwrap().round(0.1).unwrap();
        assert_eq!(z.ranks(), vec![1, 1, 1]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn rounding_error_bound(seed in 0u64..10_000, le in -10.0f64..-1.0) {
            let eps = 10f64.powf(le);
            let x = random_tensor(&[4, 3, 5, 2], seed);
            let tt = tt_svd(&x, 1e-14).unwrap();
            let r = tt.round(eps).unwrap();
            prop_assert!(r.reconstruct().unwrap().distance(&x).unwrap() <= (eps + 1e-13) * x.frobenius_norm());
        }
    }

    fn svd_rank(m: &DMatrix<f64>) -> usize {
        let s = f64::thin_svd(m).unwrap().sigma;
        s.iter().filter(|&&v| v > 1e-12 * s[0]).count()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn error_bound_and_monotone_ranks(seed in 0u64..10_000) {
            let x = random_tensor(&[5, 6, 7], seed);
            let nx = x.frobenius_norm();
            let mut prev: Option<Vec<usize>> = None;
            for eps in [1e-1, 1e-4, 1e-8] {
                let tt = tt_svd(&x, eps).unwrap();
                let err = tt.reconstruct().unwrap().distance(&x).unwrap();
                prop_assert!(err <= eps * nx);
                if let Some(p) = &prev {
                    // smaller eps now, ranks must not shrink
                    prop_assert!(tt.ranks().iter().zip(p).all(|(a, b)| a >= b));
                }
                prev = Some(tt.ranks());
            }
        }
    }
}
