//! Reference solvers: a sparse direct solve of the assembled Kronecker
//! system and a dense eigendecomposition solve.

use faer::prelude::Solve;
use faer::sparse::{SparseColMat, Triplet};
use nalgebra::DMatrix;
use num_complex::Complex64;

use super::problem::SylvesterProblem3D;
use crate::linalg::dense::{general_eigen, lu_solve, symmetric_eigen};
use crate::tensor::{kmode_product, DenseTensor};
use crate::{Error, Result};

/// Largest `n_0 n_1 n_2` the direct solver accepts.
pub const DIRECT_SIZE_CAP: usize = 1 << 17;

/// Largest mode size the eigendecomposition solver accepts.
pub const EIGEN_MODE_CAP: usize = 2048;

/// Assembles `I⊗I⊗A_0 + I⊗A_1⊗I + A_2⊗I⊗I` (column-major `vec`) and solves
/// it by sparse LU.
pub fn direct_kron_solve_3d(p: &SylvesterProblem3D) -> Result<DenseTensor<f64>> {
    let [n0, n1, n2] = p.extents();
    let total = n0 * n1 * n2;
    if total > DIRECT_SIZE_CAP {
        return Err(Error::SizeCap { requested: total, cap: DIRECT_SIZE_CAP });
    }
    let mut entries = Vec::new();
    for (r, c, v) in p.ops[0].triplets()? {
        for s in 0..n1 * n2 {
            entries.push(Triplet::new(r + n0 * s, c + n0 * s, v));
        }
    }
    for (r, c, v) in p.ops[1].triplets()? {
        for i in 0..n0 {
            for k in 0..n2 {
                let base = i + n0 * n1 * k;
                entries.push(Triplet::new(base + n0 * r, base + n0 * c, v));
            }
        }
    }
    for (r, c, v) in p.ops[2].triplets()? {
        for s in 0..n0 * n1 {
            entries.push(Triplet::new(s + n0 * n1 * r, s + n0 * n1 * c, v));
        }
    }
    let mat = SparseColMat::<usize, f64>::try_new_from_triplets(total, total, &entries)
        .map_err(|e| Error::Decomposition(format!("sparse assembly: {e:?}")))?;
    let lu = mat.sp_lu().map_err(|e| Error::Singular(format!("sparse LU: {e:?}")))?;
    let f = p.rhs_dense()?;
    let mut x = faer::Mat::<f64>::from_fn(total, 1, |i, _| f.data()[i]);
    lu.solve_in_place(x.as_mut());
    let data: Vec<f64> = (0..total).map(|i| x[(i, 0)]).collect();
    if data.iter().any(|v| !v.is_finite()) {
        return Err(Error::Singular("direct Kronecker solve produced non-finite values".into()));
    }
    DenseTensor::new(vec![n0, n1, n2], data)
}

/// `A = V diag(λ) V⁻¹` with `V⁻¹` explicit.
pub(crate) struct Eigensystem {
    pub values: Vec<Complex64>,
    pub vectors: DMatrix<Complex64>,
    pub inverse: DMatrix<Complex64>,
}

pub(crate) fn eigensystem(a: &DMatrix<f64>) -> Result<Eigensystem> {
    if crate::linalg::dense::is_symmetric(a, 1e-13) {
        let (vals, vecs) = symmetric_eigen(&((a + a.transpose()) * 0.5))?;
        let vectors = vecs.map(|v| Complex64::new(v, 0.0));
        Ok(Eigensystem {
            values: vals.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            inverse: vectors.transpose(),
            vectors,
        })
    } else {
        let (values, vectors) = general_eigen(a)?;
        let n = a.nrows();
        let inverse = lu_solve(&vectors, &DMatrix::identity(n, n))
            .map_err(|_| Error::Decomposition("matrix is not diagonalizable".into()))?;
        Ok(Eigensystem { values, vectors, inverse })
    }
}

/// Solves `Σ_k X ×_k A_k = F` for small dense `A_k` by diagonalizing every
/// factor and dividing elementwise by `λ_p + λ_q + λ_r`.
pub(crate) fn eigen_solve_dense(ops: &[DMatrix<f64>; 3], f: &DenseTensor<f64>) -> Result<DenseTensor<f64>> {
    let eig = ops.iter().map(eigensystem).collect::<Result<Vec<_>>>()?;
    let mut g = to_complex(f);
    for (k, e) in eig.iter().enumerate() {
        g = kmode_product(&g, &e.inverse, k)?;
    }
    let scale: f64 = eig.iter().map(|e| e.values.iter().map(|v| v.norm()).fold(0.0, f64::max)).sum();
    let ext = g.extents().to_vec();
    let data = g.data_mut();
    for r in 0..ext[2] {
        for q in 0..ext[1] {
            for p in 0..ext[0] {
                let s = eig[0].values[p] + eig[1].values[q] + eig[2].values[r];
                if s.norm() < 1e-14 * scale.max(f64::MIN_POSITIVE) {
                    return Err(Error::Singular(format!("eigenvalue sum vanishes at ({p}, {q}, {r})")));
                }
                data[p + ext[0] * (q + ext[1] * r)] /= s;
            }
        }
    }
    for (k, e) in eig.iter().enumerate() {
        g = kmode_product(&g, &e.vectors, k)?;
    }
    DenseTensor::new(ext, g.data().iter().map(|v| v.re).collect())
}

/// Eigendecomposition solve of the full problem (dense `A_k`).
pub fn eigen_solve_3d(p: &SylvesterProblem3D) -> Result<DenseTensor<f64>> {
    let ext = p.extents();
    if let Some(&n) = ext.iter().find(|&&n| n > EIGEN_MODE_CAP) {
        return Err(Error::SizeCap { requested: n, cap: EIGEN_MODE_CAP });
    }
    let ops = [p.ops[0].to_dense()?, p.ops[1].to_dense()?, p.ops[2].to_dense()?];
    eigen_solve_dense(&ops, &p.rhs_dense()?)
}

fn to_complex(x: &DenseTensor<f64>) -> DenseTensor<Complex64> {
    DenseTensor::new(x.extents().to_vec(), x.data().iter().map(|&v| Complex64::new(v, 0.0)).collect())
        .expect("same extents")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::SpectralSet;
    use crate::linalg::{BandMatrix, Operator};
    use crate::sylvester::residual::residual_3d;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_spd(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
        let m = DMatrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
        &m * m.transpose() + DMatrix::identity(n, n)
    }

    fn random_tensor(rng: &mut ChaCha8Rng, ext: [usize; 3]) -> DenseTensor<f64> {
        DenseTensor::from_fn(ext.to_vec(), |_| rng.random_range(-1.0..1.0)).unwrap()
    }

    fn any_spectrum() -> SpectralSet {
        SpectralSet::interval(0.5, 100.0).unwrap()
    }

    #[test]
    fn diagonal_operators_divide_elementwise() {
        let d = [vec![1.0, 2.0], vec![3.0, 5.0, 7.0], vec![0.5, 4.0]];
        let ops = d.clone().map(|v| Operator::Banded(BandMatrix::diagonal(&v)));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f = random_tensor(&mut rng, [2, 3, 2]);
        let p = SylvesterProblem3D::with_dense_rhs(ops, &f, [any_spectrum(); 3]).unwrap();
        let x = direct_kron_solve_3d(&p).unwrap();
        let y = eigen_solve_3d(&p).unwrap();
        for i in 0..2 {
            for j in 0..3 {
                for k in 0..2 {
                    let e = f.get(&[i, j, k]) / (d[0][i] + d[1][j] + d[2][k]);
                    assert!((x.get(&[i, j, k]) - e).abs() < 1e-12);
                    assert!((y.get(&[i, j, k]) - e).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn identity_operators_give_a_third() {
        let ops = [2, 3, 4].map(|n| Operator::dense(DMatrix::identity(n, n)).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let f = random_tensor(&mut rng, [2, 3, 4]);
        let p = SylvesterProblem3D::with_dense_rhs(ops, &f, [any_spectrum(); 3]).unwrap();
        let x = eigen_solve_3d(&p).unwrap();
        assert!(x.distance(&f.scale(1.0 / 3.0)).unwrap() < 1e-12 * f.frobenius_norm());
    }

    #[test]
    fn random_nonsymmetric_residual() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let ops = [0; 3].map(|_| {
            Operator::dense(DMatrix::from_fn(2, 2, |i, j| rng.random_range(-1.0..1.0) + if i == j { 3.0 } else { 0.0 }))
                .unwrap()
        });
        let f = random_tensor(&mut rng, [2, 2, 2]);
        let p = SylvesterProblem3D::with_dense_rhs(ops, &f, [any_spectrum(); 3]).unwrap();
        let x = direct_kron_solve_3d(&p).unwrap();
        assert!(residual_3d(&p, &x).unwrap() <= 1e-12 * f.frobenius_norm());
        let y = eigen_solve_3d(&p).unwrap();
        assert!(residual_3d(&p, &y).unwrap() <= 1e-12 * f.frobenius_norm());
    }

    #[test]
    fn cross_oracle_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let ops = [0; 3].map(|_| Operator::dense(random_spd(&mut rng, 8)).unwrap());
        let f = random_tensor(&mut rng, [8, 8, 8]);
        let p = SylvesterProblem3D::with_dense_rhs(ops, &f, [any_spectrum(); 3]).unwrap();
        let x = direct_kron_solve_3d(&p).unwrap();
        let y = eigen_solve_3d(&p).unwrap();
        assert!(x.distance(&y).unwrap() <= 1e-11 * x.frobenius_norm());
        assert!(residual_3d(&p, &x).unwrap() <= 1e-11 * p.rhs_norm());
    }

    #[test]
    fn singular_sum_rejected() {
        let ops = [Operator::dense(DMatrix::from_element(1, 1, 1.0)).unwrap(),
            Operator::dense(DMatrix::from_element(1, 1, 1.0)).unwrap(),
            Operator::dense(DMatrix::from_element(1, 1, -2.0)).unwrap()];
        let f = DenseTensor::new(vec![1, 1, 1], vec![1.0]).unwrap();
        let p = SylvesterProblem3D::with_dense_rhs(ops, &f, [any_spectrum(); 3]).unwrap();
        assert!(matches!(eigen_solve_3d(&p), Err(Error::Singular(_))));
    }

    #[test]
    fn size_cap() {
        let ops = [0; 3].map(|_| Operator::Banded(BandMatrix::diagonal(&[1.0; 60])));
        let rhs = crate::formats::TTTensor::zeros(&[60, 60, 60]).unwrap();
        let p = SylvesterProblem3D::new(ops, rhs, [any_spectrum(); 3]).unwrap();
        assert!(matches!(direct_kron_solve_3d(&p), Err(Error::SizeCap { .. })));
    }
}
