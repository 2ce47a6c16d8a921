//! `−∇²u = f` on `[−1, 1]³` with zero Dirichlet data: second-order finite
//! differences and an ultraspherical spectral discretization.

use nalgebra::{DMatrix, DVector};

use crate::bounds::SpectralSet;
use crate::formats::{LowRankFormat, TTTensor};
use crate::linalg::tridiagonal::extreme_eigenvalues;
use crate::linalg::{BandMatrix, Operator};
use crate::sylvester::SylvesterProblem3D;
use crate::tensor::DenseTensor;
use crate::{Error, Result};

/// Interior nodes `−1 + ih`, `h = 2/n`, `i = 1, …, n − 1`.
pub fn fd_interior_points(n: usize) -> Vec<f64> {
    let h = 2.0 / n as f64;
    (1..n).map(|i| -1.0 + i as f64 * h).collect()
}

/// `−K = h⁻² tridiag(−1, 2, −1)` of size `n − 1`, eigenvalues
/// `(4/h²) sin²(πk/(2n))` inside `[1, n²]`.
pub fn fd_negative_laplacian(n: usize) -> Result<BandMatrix> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("finite-difference grid needs n >= 3, got {n}")));
    }
    let m = n - 1;
    let s = (n as f64 / 2.0).powi(2);
    BandMatrix::symmetric_tridiagonal(&vec![2.0 * s; m], &vec![-s; m - 1])
}

fn fd_problem(n: usize, rhs: TTTensor<f64>) -> Result<SylvesterProblem3D> {
    let op = Operator::Banded(fd_negative_laplacian(n)?);
    let s = SpectralSet::interval(1.0, (n * n) as f64)?;
    SylvesterProblem3D::new([op.clone(), op.clone(), op], rhs, [s; 3])
}

/// Finite-difference problem with a constant right-hand side, stored rank one.
pub fn fd_poisson_constant(n: usize, value: f64) -> Result<SylvesterProblem3D> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("finite-difference grid needs n >= 3, got {n}")));
    }
    let ones = DVector::from_element(n - 1, 1.0);
    let rhs = TTTensor::rank_one(&[ones.clone() * value, ones.clone(), ones])?;
    fd_problem(n, rhs)
}

/// Finite-difference problem with `f` sampled at the interior nodes.
pub fn fd_poisson(n: usize, f: impl Fn(f64, f64, f64) -> f64) -> Result<SylvesterProblem3D> {
    fd_negative_laplacian(n)?;
    let x = fd_interior_points(n);
    let g = DenseTensor::from_fn(vec![n - 1; 3], |i| f(x[i[0]], x[i[1]], x[i[2]]))?;
    if g.data().iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("right-hand side sample".into()));
    }
    let op = Operator::Banded(fd_negative_laplacian(n)?);
    let s = SpectralSet::interval(1.0, (n * n) as f64)?;
    SylvesterProblem3D::with_dense_rhs([op.clone(), op.clone(), op], &g, [s; 3])
}

/// Recurrence coefficient `a_k` of the orthonormal `C^(3/2)` family:
/// `x c_k = a_k c_{k+1} + a_{k−1} c_{k−1}`.
fn jacobi_coefficient(k: usize) -> f64 {
    let k = k as f64;
    ((k + 1.0) * (k + 3.0) / ((2.0 * k + 3.0) * (2.0 * k + 5.0))).sqrt()
}

/// `c_0(t), …, c_n(t)`: ultraspherical polynomials of parameter 3/2,
/// orthonormal for the weight `1 − t²` on `[−1, 1]`.
pub fn ultraspherical_values(n: usize, t: f64) -> Vec<f64> {
    let mut c = Vec::with_capacity(n + 1);
    c.push((0.75f64).sqrt());
    if n >= 1 {
        c.push(t * c[0] / jacobi_coefficient(0));
    }
    for k in 1..n {
        let next = (t * c[k] - jacobi_coefficient(k - 1) * c[k - 1]) / jacobi_coefficient(k);
        c.push(next);
    }
    c
}

/// Operators of the spectral discretization with `n + 1` coefficients per
/// mode in the basis `(1 − t²) c_k(t)`:
/// `−∂²[(1 − t²)c_k] = (k+1)(k+2) c_k`, so `diag_laplacian[k] = (k+1)(k+2)`;
/// `(1 − t²) c_k = Σ_j mass[j, k] c_j` with the symmetric pentadiagonal
/// `mass = I − J²` (`J` the Jacobi matrix of the family).
#[derive(Clone, Debug)]
pub struct SpectralPoissonOperators {
    pub n: usize,
    pub diag_laplacian: Vec<f64>,
    pub mass: BandMatrix,
    /// Extreme eigenvalues of `A = diag_laplacian⁻¹ · mass`.
    pub spectrum: (f64, f64),
}

impl SpectralPoissonOperators {
    pub fn new(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidArgument(format!("spectral discretization needs n >= 4, got {n}")));
        }
        let size = n + 1;
        let a: Vec<f64> = (0..size + 1).map(jacobi_coefficient).collect();
        let mut mass = BandMatrix::zeros(size, 2, 2);
        for j in 0..size {
            let below = if j == 0 { 0.0 } else { a[j - 1] * a[j - 1] };
            mass.set(j, j, 1.0 - below - a[j] * a[j]);
            if j + 2 < size {
                let v = -a[j] * a[j + 1];
                mass.set(j, j + 2, v);
                mass.set(j + 2, j, v);
            }
        }
        let diag_laplacian: Vec<f64> = (0..size).map(|k| ((k + 1) * (k + 2)) as f64).collect();
        let spectrum = scaled_mass_extremes(&mass, &diag_laplacian);
        let ops = Self { n, diag_laplacian, mass, spectrum };
        let (lo, hi) = ops.enclosure();
        if !(spectrum.0 >= lo && spectrum.1 <= hi) {
            return Err(Error::InvalidGeometry(format!(
                "eigenvalues of A span [{:e}, {:e}], outside [{lo:e}, {hi:e}]",
                spectrum.0, spectrum.1
            )));
        }
        Ok(ops)
    }

    /// The claimed enclosure `[1/(30n⁴), 1]` of `Λ(A)`, in the positive sign
    /// convention.
    pub fn enclosure(&self) -> (f64, f64) {
        (1.0 / (30.0 * (self.n as f64).powi(4)), 1.0)
    }

    pub fn size(&self) -> usize {
        self.n + 1
    }

    /// `√diag_laplacian`.
    pub fn scaling(&self) -> Vec<f64> {
        self.diag_laplacian.iter().map(|v| v.sqrt()).collect()
    }

    /// Dense `A = diag_laplacian⁻¹ · mass`.
    pub fn a_matrix(&self) -> DMatrix<f64> {
        let m = self.mass.to_dense();
        DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] / self.diag_laplacian[i])
    }

    /// `mass⁻¹` (dense).
    pub fn mass_inverse(&self) -> Result<DMatrix<f64>> {
        Ok(self.mass.factor::<f64>()?.solve(&DMatrix::identity(self.size(), self.size())))
    }

    /// Recovers coefficients `X = Y ×_k P⁻¹` from the symmetrized unknown `Y`.
    pub fn unscale(&self, y: &DenseTensor<f64>) -> Result<DenseTensor<f64>> {
        let inv = DMatrix::from_diagonal(&DVector::from_iterator(self.size(), self.scaling().iter().map(|v| 1.0 / v)));
        let mut x = y.clone();
        for k in 0..3 {
            x = crate::tensor::kmode_product(&x, &inv, k)?;
        }
        Ok(x)
    }

    pub fn unscale_tt(&self, y: &TTTensor<f64>) -> Result<TTTensor<f64>> {
        let inv = DMatrix::from_diagonal(&DVector::from_iterator(self.size(), self.scaling().iter().map(|v| 1.0 / v)));
        let mut x = y.clone();
        for k in 0..3 {
            x = x.mode_product(&inv, k)?;
        }
        Ok(x)
    }

    /// `u(p)` from the coefficient tensor `x`.
    pub fn evaluate(&self, x: &DenseTensor<f64>, p: [f64; 3]) -> f64 {
        let v: Vec<Vec<f64>> = p
            .iter()
            .map(|&t| ultraspherical_values(self.n, t).into_iter().map(|c| (1.0 - t * t) * c).collect())
            .collect();
        contract(x, &v)
    }

    /// `−∇²u(p)` evaluated exactly from the coefficients.
    pub fn negative_laplacian(&self, x: &DenseTensor<f64>, p: [f64; 3]) -> f64 {
        let c: Vec<Vec<f64>> = p.iter().map(|&t| ultraspherical_values(self.n, t)).collect();
        let phi: Vec<Vec<f64>> = c.iter().zip(p).map(|(c, t)| c.iter().map(|v| (1.0 - t * t) * v).collect()).collect();
        let dc: Vec<Vec<f64>> = c.iter().map(|c| c.iter().zip(&self.diag_laplacian).map(|(v, d)| v * d).collect()).collect();
        (0..3)
            .map(|k| {
                let mut vs = phi.clone();
                vs[k] = dc[k].clone();
                contract(x, &vs)
            })
            .sum()
    }
}

/// `Σ x[p,q,r] a[p] b[q] c[r]`.
fn contract(x: &DenseTensor<f64>, v: &[Vec<f64>]) -> f64 {
    let e = x.extents();
    let data = x.data();
    let mut total = 0.0;
    for r in 0..e[2] {
        let mut plane = 0.0;
        for q in 0..e[1] {
            let col = &data[e[0] * (q + e[1] * r)..e[0] * (q + 1 + e[1] * r)];
            let s: f64 = col.iter().zip(&v[0]).map(|(a, b)| a * b).sum();
            plane += s * v[1][q];
        }
        total += plane * v[2][r];
    }
    total
}

/// `A` is similar to `P⁻¹ mass P⁻¹` with `P = √diag_laplacian`, which only
/// couples indices of equal parity: two symmetric tridiagonals.
fn scaled_mass_extremes(mass: &BandMatrix, d: &[f64]) -> (f64, f64) {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for parity in 0..2 {
        let idx: Vec<usize> = (parity..n).step_by(2).collect();
        if idx.is_empty() {
            continue;
        }
        let diag: Vec<f64> = idx.iter().map(|&i| mass.get(i, i) / d[i]).collect();
        let off: Vec<f64> = idx.windows(2).map(|w| mass.get(w[0], w[1]) / (d[w[0]] * d[w[1]]).sqrt()).collect();
        let (a, b) = extreme_eigenvalues(&diag, &off);
        lo = lo.min(a);
        hi = hi.max(b);
    }
    (lo, hi)
}

/// Coefficients of the constant function `value` in the basis `c_p c_q c_r`.
pub fn constant_coefficients(n: usize, value: f64) -> Result<TTTensor<f64>> {
    let mut e0 = DVector::zeros(n + 1);
    e0[0] = value * (4.0f64 / 3.0).powf(1.5);
    let mut u = DVector::zeros(n + 1);
    u[0] = 1.0;
    TTTensor::rank_one(&[e0, u.clone(), u])
}

/// Spectral problem for coefficients `f_coeffs` of `f`. With
/// `P = √diag_laplacian` the unknown is `Y = X ×_k P` and every mode carries
/// the symmetric `P mass⁻¹ P` (spectrum `1/Λ(A) ⊂ [1, 30n⁴]`); the
/// right-hand side is `F ×_k (P mass⁻¹)`.
pub fn spectral_poisson(n: usize, f_coeffs: &TTTensor<f64>) -> Result<(SylvesterProblem3D, SpectralPoissonOperators)> {
    let ops = SpectralPoissonOperators::new(n)?;
    let size = ops.size();
    if f_coeffs.ndim() != 3 || LowRankFormat::<f64>::extents(f_coeffs) != vec![size; 3] {
        return Err(Error::DimensionMismatch(format!("coefficient tensor must be {size}^3")));
    }
    let p = ops.scaling();
    let op = Operator::scaled_inverse(ops.mass.clone(), p.clone(), p.clone())?;
    let pm = DMatrix::from_fn(size, size, |i, _| p[i]).component_mul(&ops.mass_inverse()?);
    let mut rhs = f_coeffs.clone();
    for k in 0..3 {
        rhs = rhs.mode_product(&pm, k)?;
    }
    let (lo, hi) = ops.enclosure();
    let s = SpectralSet::interval(1.0 / hi, 1.0 / lo)?;
    Ok((SylvesterProblem3D::new([op.clone(), op.clone(), op], rhs, [s; 3])?, ops))
}

/// Fourth-order central-difference `−∇²u(p)` with step `h`.
pub fn fd_negative_laplacian_at(u: impl Fn([f64; 3]) -> f64, p: [f64; 3], h: f64) -> f64 {
    let centre = u(p);
    let mut lap = 0.0;
    for k in 0..3 {
        let at = |s: f64| {
            let mut q = p;
            q[k] += s;
            u(q)
        };
        lap += (-at(2.0 * h) + 16.0 * at(h) - 30.0 * centre + 16.0 * at(-h) - at(-2.0 * h)) / (12.0 * h * h);
    }
    -lap
}
