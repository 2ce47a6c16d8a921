//! Tensors sampled from functions on tensor-product grids.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tensor::DenseTensor;
use crate::{Error, Result, Scalar};

/// One coordinate vector per mode.
#[derive(Clone, Debug, PartialEq)]
pub struct GridSpec {
    pub axes: Vec<Vec<f64>>,
}

impl GridSpec {
    /// `n` equispaced points on `[−1, 1]` including both endpoints, in each of
    /// `d` modes.
    pub fn equispaced(n: usize, d: usize) -> Result<Self> {
        if n < 2 || d == 0 {
            return Err(Error::InvalidArgument(format!("equispaced grid needs n >= 2 and d >= 1, got {n}, {d}")));
        }
        Ok(Self { axes: vec![equispaced_axis(n); d] })
    }

    pub fn ndim(&self) -> usize {
        self.axes.len()
    }

    pub fn extents(&self) -> Vec<usize> {
        self.axes.iter().map(|a| a.len()).collect()
    }
}

pub fn equispaced_axis(n: usize) -> Vec<f64> {
    (0..n).map(|i| -1.0 + 2.0 * i as f64 / (n - 1) as f64).collect()
}

/// `X[i_0, …, i_{d−1}] = f(x_{i_0}, …, x_{i_{d−1}})`.
pub fn sample_function<T: Scalar>(grid: &GridSpec, f: impl Fn(&[f64]) -> T) -> Result<DenseTensor<T>> {
    let mut point = vec![0.0; grid.ndim()];
    let mut bad = None;
    let x = DenseTensor::from_fn(grid.extents(), |idx| {
        for (k, &i) in idx.iter().enumerate() {
            point[k] = grid.axes[k][i];
        }
        let v = f(&point);
        if !v.is_finite_value() && bad.is_none() {
            bad = Some(point.clone());
        }
        v
    })?;
    match bad {
        Some(p) => Err(Error::NonFinite(format!("function value at {p:?}"))),
        None => Ok(x),
    }
}

/// `e^{iMπxyz}` on the equispaced `n³` grid.
pub fn fourier_like(m: f64, n: usize) -> Result<DenseTensor<Complex64>> {
    let grid = GridSpec::equispaced(n, 3)?;
    sample_function(&grid, |p| Complex64::from_polar(1.0, m * std::f64::consts::PI * p[0] * p[1] * p[2]))
}

/// Bump centres: explicit points or a seed for uniform draws in `[−1, 1]³`.
#[derive(Clone, Debug, PartialEq)]
pub enum BumpCenters {
    Given(Vec<[f64; 3]>),
    Seeded(u64),
}

pub fn bump_centers(count: usize, seed: u64) -> Vec<[f64; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| [rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)])
        .collect()
}

/// `Σ_j exp(−γ |x − c_j|²)` on the equispaced `n³` grid. Each bump is
/// separable, so the tensor is accumulated as a sum of outer products.
pub fn gaussian_bumps(count: usize, gamma: f64, centers: &BumpCenters, n: usize) -> Result<DenseTensor<f64>> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("bump width {gamma} must be positive")));
    }
    let centers = match centers {
        BumpCenters::Given(c) => {
            if c.len() != count {
                return Err(Error::InvalidArgument(format!("{} centres given for {count} bumps", c.len())));
            }
            c.clone()
        }
        BumpCenters::Seeded(seed) => bump_centers(count, *seed),
    };
    if n < 2 {
        return Err(Error::InvalidArgument("grid needs at least two points".into()));
    }
    let axis = equispaced_axis(n);
    let mut data = vec![0.0; n * n * n];
    for c in &centers {
        let v: Vec<DVector<f64>> =
            (0..3).map(|k| DVector::from_iterator(n, axis.iter().map(|&x| (-gamma * (x - c[k]).powi(2)).exp()))).collect();
        for r in 0..n {
            for q in 0..n {
                let w = v[1][q] * v[2][r];
                let base = n * (q + n * r);
                for p in 0..n {
                    data[base + p] += v[0][p] * w;
                }
            }
        }
    }
    DenseTensor::new(vec![n, n, n], data)
}

/// A random polynomial with degree `< degrees[j]` in variable `j`: its
/// coefficient tensor in the monomial basis, entries uniform in `[−1, 1]`.
pub fn random_polynomial(degrees: &[usize], seed: u64) -> Result<DenseTensor<f64>> {
    if degrees.is_empty() || degrees.contains(&0) {
        return Err(Error::InvalidArgument(format!("degrees {degrees:?} must be positive")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DenseTensor::from_fn(degrees.to_vec(), |_| rng.random_range(-1.0..=1.0))
}

/// Samples `Σ c_{a} Π_j x_j^{a_j}` on a grid.
pub fn sample_polynomial(coeffs: &DenseTensor<f64>, grid: &GridSpec) -> Result<DenseTensor<f64>> {
    if coeffs.ndim() != grid.ndim() {
        return Err(Error::DimensionMismatch("coefficient tensor and grid orders differ".into()));
    }
    // Vandermonde factors applied mode by mode: X = C ×_j V_j.
    let mut x = coeffs.clone();
    for (j, axis) in grid.axes.iter().enumerate() {
        let deg = coeffs.extents()[j];
        let v = nalgebra::DMatrix::from_fn(axis.len(), deg, |i, a| axis[i].powi(a as i32));
        x = crate::tensor::kmode_product(&x, &v, j)?;
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formats::{hosvd, tt_svd, CPTensor, LowRankFormat};
    use crate::bounds::poly_sampling_bounds;

    #[test]
    fn constant_function() {
        let g = GridSpec::equispaced(4, 3).unwrap();
        let x = sample_function(&g, |_| 1.0).unwrap();
        assert!(x.data().iter().all(|&v| v == 1.0));
        assert!(sample_function(&g, |p| 1.0 / p[0]).is_ok());
        let g = GridSpec::equispaced(3, 3).unwrap();
        assert!(matches!(sample_function(&g, |p| 1.0 / p[0]), Err(Error::NonFinite(_))));
    }

    #[test]
    fn cosine_sum_has_rank_two() {
        let g = GridSpec::equispaced(20, 3).unwrap();
        let x = sample_function(&g, |p| (p[0] + p[1] + p[2]).cos()).unwrap();
        let r = tt_svd(&x, 1e-12).unwrap().ranks();
        assert!(r[1] <= 2 && r[2] <= 2, "{r:?}");
    }

    #[test]
    fn two_term_cp_is_exact() {
        let n = 6;
        let g = GridSpec::equispaced(n, 4).unwrap();
        let x = sample_function(&g, |p| p[0].cos() * p[1].sin() + (10.0 * p[2]).exp() * (100.0 * p[3]).exp()).unwrap();
        let ax = &g.axes[0];
        let col = |f: &dyn Fn(f64) -> f64| DVector::from_iterator(n, ax.iter().map(|&t| f(t)));
        let factors = vec![
            nalgebra::DMatrix::from_columns(&[col(&f64::cos), col(&|_| 1.0)]),
            nalgebra::DMatrix::from_columns(&[col(&f64::sin), col(&|_| 1.0)]),
            nalgebra::DMatrix::from_columns(&[col(&|_| 1.0), col(&|t| (10.0 * t).exp())]),
            nalgebra::DMatrix::from_columns(&[col(&|_| 1.0), col(&|t| (100.0 * t).exp())]),
        ];
        let cp = CPTensor::new(vec![1.0, 1.0], factors).unwrap();
        let y = cp.reconstruct().unwrap();
        assert!(y.distance(&x).unwrap() <= 1e-12 * x.frobenius_norm());
    }

    #[test]
    fn fourier_modulus_and_conjugation() {
        let x = fourier_like(7.0, 5).unwrap();
        assert!(x.data().iter().all(|v| (v.norm() - 1.0).abs() < 1e-15));
        let y = fourier_like(-7.0, 5).unwrap();
        assert!(x.data().iter().zip(y.data()).all(|(a, b)| (a.conj() - b).norm() < 1e-15));
        // the grid through 0 with M = 0 gives all ones
        let z = fourier_like(0.0, 5).unwrap();
        assert!(z.data().iter().all(|v| (v - Complex64::new(1.0, 0.0)).norm() == 0.0));
    }

    #[test]
    fn single_bump_is_separable() {
        let x = gaussian_bumps(1, 3.0, &BumpCenters::Given(vec![[0.0; 3]]), 9).unwrap();
        let ax = equispaced_axis(9);
        let v = DVector::from_iterator(9, ax.iter().map(|t| (-3.0 * t * t).exp()));
        let y = DenseTensor::outer(&[v.clone(), v.clone(), v]).unwrap();
        assert!(x.distance(&y).unwrap() < 1e-14);
        let a = gaussian_bumps(4, 10.0, &BumpCenters::Seeded(3), 6).unwrap();
        let b = gaussian_bumps(4, 10.0, &BumpCenters::Seeded(3), 6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn polynomial_ranks_within_lemma_bounds() {
        let g = GridSpec::equispaced(12, 3).unwrap();
        let degrees = [2, 3, 4];
        let c = random_polynomial(&degrees, 1).unwrap();
        let x = sample_polynomial(&c, &g).unwrap();
        let b = poly_sampling_bounds(&degrees, &[12, 12, 12]).unwrap();
        let tt = tt_svd(&x, 1e-12).unwrap();
        assert!(tt.ranks().iter().zip(&b.tt_ranks).all(|(&r, &bd)| r as u128 <= bd));
        let tk = hosvd(&x, 1e-12).unwrap();
        assert!(tk.ranks().iter().zip(&degrees).all(|(r, d)| r <= d));
        assert!((tk.storage_count() as u128) <= b.ml_storage);
    }
}
