//! Shifted solves with a Kronecker sum `I ⊗ Â + B ⊗ I` acting on `vec(Y)`
//! of an `n_Â x n_B` matrix, i.e. `Y ↦ ÂY + YBᵀ`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::adi::ShiftedSolver;
use crate::linalg::dense::{general_eigen, is_symmetric, lu_solve, symmetric_eigen};
use crate::linalg::Operator;
use crate::{Error, Result};

enum Diagonalized {
    Real { values: Vec<f64>, vectors: DMatrix<f64> },
    Complex { values: Vec<Complex64>, vectors: DMatrix<Complex64>, inverse: DMatrix<Complex64> },
}

/// `I ⊗ small + big ⊗ I` with `small` diagonalized once up front.
pub struct KronSum<'a> {
    small: DMatrix<f64>,
    big: &'a Operator,
    eig: Diagonalized,
}

impl<'a> KronSum<'a> {
    pub fn new(small: DMatrix<f64>, big: &'a Operator) -> Result<Self> {
        if small.nrows() != small.ncols() {
            return Err(Error::DimensionMismatch("small factor must be square".into()));
        }
        let eig = if is_symmetric(&small, 1e-12) {
            let sym = (&small + small.transpose()) * 0.5;
            let (values, vectors) = symmetric_eigen(&sym)?;
            Diagonalized::Real { values, vectors }
        } else {
            let (values, vectors) = general_eigen(&small)?;
            let n = small.nrows();
            let inverse = lu_solve(&vectors, &DMatrix::identity(n, n))
                .map_err(|_| Error::Decomposition("small factor is not diagonalizable".into()))?;
            Diagonalized::Complex { values, vectors, inverse }
        };
        Ok(Self { small, big, eig })
    }

    pub fn small_dim(&self) -> usize {
        self.small.nrows()
    }

    pub fn big_dim(&self) -> usize {
        self.big.dim()
    }

    fn reshape_check(&self, x: &DMatrix<f64>) -> Result<()> {
        if x.nrows() != self.small_dim() * self.big_dim() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a Kronecker sum of size {}",
                x.nrows(),
                self.small_dim() * self.big_dim()
            )));
        }
        Ok(())
    }
}

/// Column `c` of `x` viewed as an `na x nb` matrix.
fn column_as_matrix<T: nalgebra::Scalar + Copy>(x: &DMatrix<T>, c: usize, na: usize, nb: usize) -> DMatrix<T> {
    DMatrix::from_column_slice(na, nb, x.column(c).as_slice())
}

impl ShiftedSolver for KronSum<'_> {
    fn dim(&self) -> usize {
        self.small_dim() * self.big_dim()
    }

    fn apply(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        self.reshape_check(x)?;
        let (na, nb) = (self.small_dim(), self.big_dim());
        let mut out = DMatrix::zeros(x.nrows(), x.ncols());
        for c in 0..x.ncols() {
            let y = column_as_matrix(x, c, na, nb);
            let r = &self.small * &y + self.big.apply(&y.transpose())?.transpose();
            out.column_mut(c).copy_from_slice(r.as_slice());
        }
        Ok(out)
    }

    fn solve_shifted(&self, shift: f64, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        shifted_kron_solve(self, rhs, shift)
    }
}

/// Solves `(I ⊗ Â + B ⊗ I + σI) vec(Y) = vec(R)` column by column without
/// forming the Kronecker matrix: with `Â = VΛV⁻¹` every row `i` of `V⁻¹Y`
/// solves `(B + (λ_i + σ)I) yᵢ = (V⁻¹R)ᵢᵀ`.
pub fn shifted_kron_solve(k: &KronSum<'_>, rhs: &DMatrix<f64>, shift: f64) -> Result<DMatrix<f64>> {
    k.reshape_check(rhs)?;
    let (na, nb, cols) = (k.small_dim(), k.big_dim(), rhs.ncols());
    let mut out = DMatrix::zeros(na * nb, cols);
    match &k.eig {
        Diagonalized::Real { values, vectors } => {
            // rows of Vᵀ R for every column, stacked as (nb x cols) blocks per eigenvalue
            let mut t = vec![DMatrix::<f64>::zeros(nb, cols); na];
            for c in 0..cols {
                let r = vectors.transpose() * column_as_matrix(rhs, c, na, nb);
                for (i, ti) in t.iter_mut().enumerate() {
                    ti.column_mut(c).copy_from(&r.row(i).transpose());
                }
            }
            let solved = t
                .iter()
                .zip(values)
                .map(|(ti, &l)| k.big.solve_shifted(l + shift, ti))
                .collect::<Result<Vec<_>>>()?;
            for c in 0..cols {
                let y = DMatrix::from_fn(na, nb, |i, j| solved[i][(j, c)]);
                out.column_mut(c).copy_from_slice((vectors * y).as_slice());
            }
        }
        Diagonalized::Complex { values, vectors, inverse } => {
            let mut t = vec![DMatrix::<Complex64>::zeros(nb, cols); na];
            for c in 0..cols {
                let r = inverse * column_as_matrix(rhs, c, na, nb).map(|v| Complex64::new(v, 0.0));
                for (i, ti) in t.iter_mut().enumerate() {
                    ti.column_mut(c).copy_from(&r.row(i).transpose());
                }
            }
            let solved = t
                .iter()
                .zip(values)
                .map(|(ti, &l)| k.big.solve_shifted(l + shift, ti))
                .collect::<Result<Vec<_>>>()?;
            for c in 0..cols {
                let y = DMatrix::from_fn(na, nb, |i, j| solved[i][(j, c)]);
                let back = (vectors * y).map(|v| v.re);
                out.column_mut(c).copy_from_slice(back.as_slice());
            }
        }
    }
    if out.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular("shifted Kronecker-sum solve".into()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::BandMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
        DMatrix::from_fn(r, c, |_, _| rng.random_range(-1.0..1.0))
    }

    fn kron(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
        a.kronecker(b)
    }

    fn dense_system(small: &DMatrix<f64>, big: &DMatrix<f64>, shift: f64) -> DMatrix<f64> {
        let (na, nb) = (small.nrows(), big.nrows());
        kron(&DMatrix::identity(nb, nb), small) + kron(big, &DMatrix::identity(na, na))
            + DMatrix::identity(na * nb, na * nb) * shift
    }

    #[test]
    fn matches_dense_kronecker_spd() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random(&mut rng, 8, 8);
        let small = &s * s.transpose() + DMatrix::identity(8, 8);
        let b = random(&mut rng, 8, 8);
        let big = Operator::dense(&b * b.transpose() + DMatrix::identity(8, 8)).unwrap();
        let k = KronSum::new(small.clone(), &big).unwrap();
        let rhs = random(&mut rng, 64, 3);
        let x = shifted_kron_solve(&k, &rhs, 0.7).unwrap();
        let sys = dense_system(&small, &big.to_dense().unwrap(), 0.7);
        assert!((&sys * &x - &rhs).norm() < 1e-11 * rhs.norm());
        assert!((k.apply(&x).unwrap() + &x * 0.7 - &rhs).norm() < 1e-11 * rhs.norm());
    }

    #[test]
    fn nonsymmetric_small_factor() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let small = random(&mut rng, 5, 5) + DMatrix::identity(5, 5) * 4.0;
        let big = Operator::Banded(BandMatrix::symmetric_tridiagonal(&[4.0; 6], &[-1.0; 5]).unwrap());
        let k = KronSum::new(small.clone(), &big).unwrap();
        let rhs = random(&mut rng, 30, 2);
        let x = shifted_kron_solve(&k, &rhs, 0.3).unwrap();
        let sys = dense_system(&small, &big.to_dense().unwrap(), 0.3);
        assert!((sys * x - &rhs).norm() < 1e-11 * rhs.norm());
    }

    #[test]
    fn zero_big_factor_decouples_columns() {
        let small = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let big = Operator::dense(DMatrix::zeros(3, 3)).unwrap();
        let k = KronSum::new(small.clone(), &big).unwrap();
        let rhs = DMatrix::from_column_slice(6, 1, &[1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        let x = shifted_kron_solve(&k, &rhs, 0.0).unwrap();
        for j in 0..3 {
            let block = rhs.rows(2 * j, 2).into_owned();
            let expect = lu_solve(&small, &block).unwrap();
            assert!((x.rows(2 * j, 2) - expect).norm() < 1e-14);
        }
    }

    #[test]
    fn large_shift_limit() {
        let small = DMatrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 3.0]);
        let big = Operator::dense(DMatrix::from_diagonal_element(2, 2, 1.5)).unwrap();
        let k = KronSum::new(small, &big).unwrap();
        let rhs = DMatrix::from_column_slice(4, 1, &[1.0, -2.0, 0.5, 4.0]);
        let shift = 1e9;
        let x = shifted_kron_solve(&k, &rhs, shift).unwrap();
        assert!((x * shift - &rhs).norm() < 1e-8 * rhs.norm());
    }
}
