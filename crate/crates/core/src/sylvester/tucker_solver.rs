//! Tucker solver: one fADI column space per mode, a Galerkin core equation
//! diagonalized mode by mode, then HOSVD truncation of the core.

use nalgebra::DMatrix;

use super::adi::fadi_column_space;
use super::oracles::eigen_solve_dense;
use super::problem::SylvesterProblem3D;
use super::shifts::shifts_for_pair;
use super::tt_solver::{check_eps, column_basis, SolveInfo};
use crate::bounds::check_minkowski_singly_separated;
use crate::formats::{hosvd, LowRankFormat, TuckerTensor};
use crate::linalg::dense::lu_solve;
use crate::tensor::DenseTensor;
use crate::{Error, Result};

/// Largest projected core `t_0 t_1 t_2` solved by dense Kronecker LU when
/// a projected matrix cannot be diagonalized.
pub const CORE_FALLBACK_CAP: usize = 4096;

pub fn tucker_sylvester_solve_3d(p: &SylvesterProblem3D, eps: f64) -> Result<TuckerTensor<f64>> {
    Ok(tucker_sylvester_solve_3d_with_info(p, eps)?.0)
}

pub fn tucker_sylvester_solve_3d_with_info(
    p: &SylvesterProblem3D,
    eps: f64,
) -> Result<(TuckerTensor<f64>, SolveInfo)> {
    check_eps(eps)?;
    let pairs = check_minkowski_singly_separated(&p.spectra)?;
    let ext = p.extents();
    if p.rhs_norm() == 0.0 {
        let core = DenseTensor::zeros(vec![1, 1, 1])?;
        let factors = ext.iter().map(|&n| DMatrix::from_fn(n, 1, |i, _| if i == 0 { 1.0 } else { 0.0 })).collect();
        return Ok((TuckerTensor::new(core, factors)?, SolveInfo::default()));
    }
    let tol = eps / 3f64.sqrt();
    let mut info = SolveInfo::default();
    let mut bases = Vec::with_capacity(3);
    for (j, pair) in pairs.iter().enumerate() {
        let k = pair.k_for_tolerance(tol)?;
        let sh = shifts_for_pair(pair, k)?;
        let u = column_basis(&fadi_column_space(&p.ops[j], &p.matricization_left(j), &sh)?)?;
        info.steps.push(k);
        info.predicted.push(sh.predicted_factor);
        info.basis_ranks.push(u.ncols());
        bases.push(u);
    }

    let mut projected = Vec::with_capacity(3);
    let mut g = p.rhs.clone();
    for (j, u) in bases.iter().enumerate() {
        let mut a = p.ops[j].project(u)?;
        if p.ops[j].is_symmetric() {
            a = (&a + a.transpose()) * 0.5;
        }
        projected.push(a);
        g = g.mode_product(&u.transpose(), j)?;
    }
    let g = g.reconstruct()?;
    let ops = [projected[0].clone(), projected[1].clone(), projected[2].clone()];
    let core = match eigen_solve_dense(&ops, &g) {
        Err(Error::Decomposition(_)) => kron_core_solve(&ops, &g)?,
        other => other?,
    };

    let small = hosvd(&core, eps)?;
    let factors = bases.iter().zip(small.factors()).map(|(u, v)| u * v).collect();
    Ok((TuckerTensor::new(small.core().clone(), factors)?, info))
}

/// Dense solve of `(I⊗I⊗A_0 + I⊗A_1⊗I + A_2⊗I⊗I) vec(X) = vec(G)`.
fn kron_core_solve(ops: &[DMatrix<f64>; 3], g: &DenseTensor<f64>) -> Result<DenseTensor<f64>> {
    let t: Vec<usize> = ops.iter().map(|a| a.nrows()).collect();
    let total = t[0] * t[1] * t[2];
    if total > CORE_FALLBACK_CAP {
        return Err(Error::SizeCap { requested: total, cap: CORE_FALLBACK_CAP });
    }
    let eye = |n: usize| DMatrix::<f64>::identity(n, n);
    let sys = eye(t[2]).kronecker(&eye(t[1])).kronecker(&ops[0])
        + eye(t[2]).kronecker(&ops[1]).kronecker(&eye(t[0]))
        + ops[2].kronecker(&eye(t[1])).kronecker(&eye(t[0]));
    let x = lu_solve(&sys, &DMatrix::from_column_slice(total, 1, g.data()))?;
    DenseTensor::new(t, x.data.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::SpectralSet;
    use crate::formats::TTTensor;
    use crate::linalg::{BandMatrix, Operator};
    use crate::sylvester::oracles::eigen_solve_3d;
    use crate::sylvester::residual::residual_3d;
    use nalgebra::DVector;

    fn poisson(n: usize) -> SylvesterProblem3D {
        let h = 2.0 / (n + 1) as f64;
        let s = 1.0 / (h * h);
        let op = Operator::Banded(BandMatrix::symmetric_tridiagonal(&vec![2.0 * s; n], &vec![-s; n - 1]).unwrap());
        let ones = DVector::from_element(n, 1.0);
        let rhs = TTTensor::rank_one(&[ones.clone(), ones.clone(), ones]).unwrap();
        let spec = SpectralSet::interval(1.0, 4.0 * s).unwrap();
        SylvesterProblem3D::new([op.clone(), op.clone(), op], rhs, [spec; 3]).unwrap()
    }

    #[test]
    fn poisson_matches_eigen_oracle() {
        let p = poisson(16);
        let exact = eigen_solve_3d(&p).unwrap();
        for eps in [1e-4, 1e-8] {
            let x = tucker_sylvester_solve_3d(&p, eps).unwrap();
            let err = x.reconstruct().unwrap().distance(&exact).unwrap() / exact.frobenius_norm();
            assert!(err <= eps, "eps {eps}: {err}");
            for u in x.factors() {
                let dev = (u.transpose() * u - DMatrix::identity(u.ncols(), u.ncols())).amax();
                assert!(dev <= 1e-12);
            }
            assert!(residual_3d(&p, &x).unwrap() < 1e3 * eps * p.rhs_norm());
        }
    }

    #[test]
    fn separable_diagonal_problem_has_unit_core() {
        let d = [vec![1.0, 2.0, 3.0], vec![1.5, 2.5, 3.5, 4.5], vec![1.0, 4.0]];
        let ops = d.clone().map(|v| Operator::Banded(BandMatrix::diagonal(&v)));
        let e = |n: usize| DVector::from_fn(n, |i, _| if i == 0 { 1.0 } else { 0.0 });
        let rhs = TTTensor::rank_one(&[e(3), e(4), e(2)]).unwrap();
        let spec = SpectralSet::interval(1.0, 4.5).unwrap();
        let p = SylvesterProblem3D::new(ops, rhs, [spec; 3]).unwrap();
        let x = tucker_sylvester_solve_3d(&p, 1e-10).unwrap();
        assert_eq!(x.ranks(), vec![1, 1, 1]);
        let v = x.reconstruct().unwrap();
        assert!((v.get(&[0, 0, 0]) - 1.0 / 3.5).abs() < 1e-12);
        assert!(v.frobenius_norm() - 1.0 / 3.5 < 1e-12);
    }

    #[test]
    fn kron_fallback_agrees_with_eigen_path() {
        let ops = [
            DMatrix::from_row_slice(2, 2, &[3.0, 1.0, 0.0, 2.0]),
            DMatrix::from_row_slice(2, 2, &[2.0, 0.5, 0.5, 4.0]),
            DMatrix::from_row_slice(1, 1, &[1.0]),
        ];
        let g = DenseTensor::from_fn(vec![2, 2, 1], |i| (i[0] + 2 * i[1]) as f64 + 1.0).unwrap();
        let a = kron_core_solve(&ops, &g).unwrap();
        let b = eigen_solve_dense(&ops, &g).unwrap();
        assert!(a.distance(&b).unwrap() < 1e-12);
    }
}
