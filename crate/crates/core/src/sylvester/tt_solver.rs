//! Tensor-train solver: fADI for the column space of the first unfolding,
//! a projected second stage solved by fADI with a Kronecker-sum operator,
//! then compression and rounding.

use nalgebra::{DMatrix, DVector};

use super::adi::{fadi_column_space, fadi_solve};
use super::kron::KronSum;
use super::problem::SylvesterProblem3D;
use super::shifts::shifts_for_pair;
use crate::bounds::check_minkowski_sum_separated;
use crate::formats::{LowRankFormat, TTTensor};
use crate::linalg::rank_from_singular_values;
use crate::tensor::DenseTensor;
use crate::{Error, Result, Scalar};

/// Singular values of a fADI column-space factor below this fraction of the
/// largest are treated as round-off when building an orthonormal basis.
pub const BASIS_FLOOR: f64 = 1e-14;

/// Diagnostics of one low-rank solve.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SolveInfo {
    /// fADI steps per stage.
    pub steps: Vec<usize>,
    /// Zolotarev factor each stage was scheduled to reach.
    pub predicted: Vec<f64>,
    /// Basis sizes before the final truncation.
    pub basis_ranks: Vec<usize>,
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("accuracy {eps} must lie in (0, 1)")));
    }
    Ok(())
}

/// Orthonormal basis of the numerical range of `z`.
pub(crate) fn column_basis(z: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    let svd = f64::thin_svd(z)?;
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let r = svd.sigma.iter().take_while(|&&s| s > BASIS_FLOOR * smax).count().max(1);
    Ok(svd.leading_u(r))
}

fn core(left: usize, n: usize, right: usize, m: DMatrix<f64>) -> Result<DenseTensor<f64>> {
    TTTensor::core_from_vec(left, n, right, m.data.into())
}

/// Solves `X ×_0 A_0 + X ×_1 A_1 + X ×_2 A_2 = F` to relative accuracy
/// `eps` in tensor-train form.
pub fn tt_sylvester_solve_3d(p: &SylvesterProblem3D, eps: f64) -> Result<TTTensor<f64>> {
    Ok(tt_sylvester_solve_3d_with_info(p, eps)?.0)
}

pub fn tt_sylvester_solve_3d_with_info(p: &SylvesterProblem3D, eps: f64) -> Result<(TTTensor<f64>, SolveInfo)> {
    check_eps(eps)?;
    let pairs = check_minkowski_sum_separated(&p.spectra)?;
    let [n0, n1, n2] = p.extents();
    if p.rhs_norm() == 0.0 {
        return Ok((TTTensor::zeros(&[n0, n1, n2])?, SolveInfo::default()));
    }
    let tol = eps / 3f64.sqrt();
    let mut info = SolveInfo::default();

    // column space of the first unfolding
    let k1 = pairs[0].k_for_tolerance(tol)?;
    let sh1 = shifts_for_pair(&pairs[0], k1)?;
    let u1 = column_basis(&fadi_column_space(&p.ops[0], &p.first_unfolding_left(), &sh1)?)?;
    let s1 = u1.ncols();
    info.steps.push(k1);
    info.predicted.push(sh1.predicted_factor);
    info.basis_ranks.push(s1);

    // projected equation (I ⊗ U1ᵀA_0U1 + A_1 ⊗ I) C + C A_2ᵀ = (I ⊗ U1ᵀ) W_2 Z_2ᵀ
    let mut a_hat = p.ops[0].project(&u1)?;
    if p.ops[0].is_symmetric() {
        a_hat = (&a_hat + a_hat.transpose()) * 0.5;
    }
    let left = u1.transpose() * p.rhs.left_unfolding(0) * p.rhs.right_unfolding(1);
    let r2 = p.rhs.ranks()[2];
    let w2 = DMatrix::from_column_slice(s1 * n1, r2, left.as_slice());
    let z2 = p.second_unfolding_right();
    let ks = KronSum::new(a_hat, &p.ops[1])?;
    let k2 = pairs[1].k_for_tolerance(tol)?;
    let sh2 = shifts_for_pair(&pairs[1], k2)?;
    let ff = fadi_solve(&ks, &p.ops[2], &w2, &z2, &sh2)?;
    info.steps.push(k2);
    info.predicted.push(sh2.predicted_factor);

    // C ≈ U_2 Σ T_2ᵀ via QR of both factors and an SVD of the small middle
    let (qz, rz) = f64::thin_qr(&ff.z);
    let (qy, ry) = f64::thin_qr(&ff.y);
    let middle = rz * DMatrix::from_diagonal(&DVector::from_vec(ff.d.clone())) * ry.transpose();
    let svd = f64::thin_svd(&middle)?;
    let s2 = rank_from_singular_values(&svd.sigma, tol * svd.norm()).max(1);
    info.basis_ranks.push(s2);
    let u2 = qz * svd.leading_u(s2);
    let last = svd.leading_sv_adjoint(s2) * qy.transpose();

    let tt = TTTensor::new(vec![core(1, n0, s1, u1)?, core(s1, n1, s2, u2)?, core(s2, n2, 1, last)?])?;
    debug_assert_eq!(tt.extents(), vec![n0, n1, n2]);
    Ok((tt.round(eps)?, info))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::SpectralSet;
    use crate::formats::tt_svd;
    use crate::linalg::{BandMatrix, Operator};
    use crate::sylvester::oracles::{direct_kron_solve_3d, eigen_solve_3d};
    use crate::sylvester::residual::residual_3d;

    fn laplacian(n: usize) -> (Operator, SpectralSet) {
        let h = 2.0 / (n + 1) as f64;
        let s = 1.0 / (h * h);
        let op = Operator::Banded(BandMatrix::symmetric_tridiagonal(&vec![2.0 * s; n], &vec![-s; n - 1]).unwrap());
        (op, SpectralSet::interval(1.0, 4.0 * s).unwrap())
    }

    fn poisson(n: usize) -> SylvesterProblem3D {
        let (op, spec) = laplacian(n);
        let ones = DVector::from_element(n, 1.0);
        let rhs = TTTensor::rank_one(&[ones.clone(), ones.clone(), ones]).unwrap();
        SylvesterProblem3D::new([op.clone(), op.clone(), op], rhs, [spec; 3]).unwrap()
    }

    #[test]
    fn zero_rhs_gives_zero_train() {
        let mut p = poisson(6);
        p.rhs = TTTensor::zeros(&[6, 6, 6]).unwrap();
        let x = tt_sylvester_solve_3d(&p, 1e-8).unwrap();
        assert_eq!(x.norm(), 0.0);
    }

    #[test]
    fn poisson_matches_eigen_oracle() {
        let p = poisson(16);
        let exact = eigen_solve_3d(&p).unwrap();
        for eps in [1e-4, 1e-8] {
            let (x, info) = tt_sylvester_solve_3d_with_info(&p, eps).unwrap();
            let err = x.reconstruct().unwrap().distance(&exact).unwrap() / exact.frobenius_norm();
            assert!(err <= eps, "eps {eps}: {err}");
            assert!(info.basis_ranks[0] <= info.steps[0]);
            let observed = tt_svd(&exact, eps).unwrap().ranks();
            assert!(x.ranks()[1] <= observed[1] + 2);
        }
    }

    #[test]
    fn nonsymmetric_operators() {
        let n = 7;
        let mut b = BandMatrix::zeros(n, 1, 1);
        for i in 0..n {
            b.set(i, i, 4.0);
            if i + 1 < n {
                b.set(i, i + 1, -1.3);
                b.set(i + 1, i, -0.7);
            }
        }
        // eigenvalues 4 − 2√(0.91) cos(jπ/8)
        let spec = SpectralSet::interval(2.0, 6.0).unwrap();
        let op = Operator::Banded(b);
        let f = DenseTensor::from_fn(vec![n, n, n], |i| 1.0 / (1.0 + (i[0] + i[1] + i[2]) as f64)).unwrap();
        let p = SylvesterProblem3D::with_dense_rhs([op.clone(), op.clone(), op], &f, [spec; 3]).unwrap();
        let x = tt_sylvester_solve_3d(&p, 1e-8).unwrap();
        let exact = direct_kron_solve_3d(&p).unwrap();
        assert!(x.reconstruct().unwrap().distance(&exact).unwrap() <= 1e-7 * exact.frobenius_norm());
        assert!(residual_3d(&p, &x).unwrap() <= 1e-6 * p.rhs_norm());
    }

    #[test]
    fn separation_violation_is_reported() {
        let mut p = poisson(5);
        p.spectra[2] = SpectralSet::interval(-100.0, 10.0).unwrap();
        assert!(matches!(tt_sylvester_solve_3d(&p, 1e-6), Err(Error::SeparationViolation { .. })));
    }
}
