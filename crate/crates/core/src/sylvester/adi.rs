//! Dense ADI for `AX − XB = F` and factored ADI for `AX + XCᵀ = MNᵀ`.

use nalgebra::DMatrix;

use super::shifts::ShiftSchedule;
use crate::linalg::dense::lu_solve;
use crate::linalg::Operator;
use crate::{Error, Result};

/// A square real operator with shifted solves `(A + σI)x = b`.
pub trait ShiftedSolver {
    fn dim(&self) -> usize;

    fn apply(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>>;

    fn solve_shifted(&self, shift: f64, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>>;
}

impl ShiftedSolver for Operator {
    fn dim(&self) -> usize {
        Operator::dim(self)
    }

    fn apply(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        Operator::apply(self, x)
    }

    fn solve_shifted(&self, shift: f64, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        Operator::solve_shifted(self, shift, rhs)
    }
}

impl ShiftedSolver for DMatrix<f64> {
    fn dim(&self) -> usize {
        self.nrows()
    }

    fn apply(&self, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        Ok(self * x)
    }

    fn solve_shifted(&self, shift: f64, rhs: &DMatrix<f64>) -> Result<DMatrix<f64>> {
        let n = self.nrows();
        lu_solve(&(self + DMatrix::identity(n, n) * shift), rhs)
    }
}

fn check_finite(m: &DMatrix<f64>, what: &str) -> Result<()> {
    if m.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Singular(format!("{what}: a shifted system is numerically singular")))
    }
}

fn check_schedule(shifts: &ShiftSchedule) -> Result<()> {
    if shifts.is_empty() || shifts.alphas.len() != shifts.betas.len() {
        return Err(Error::InvalidArgument("shift schedule must hold k >= 1 pairs".into()));
    }
    Ok(())
}

/// `k` ADI sweeps on `AX − XB = F` from `X = 0`, one per shift pair
/// (`α` near `Λ(A)`, `β` near `Λ(B)`). Dense; meant for moderate sizes.
pub fn adi_solve(a: &DMatrix<f64>, b: &DMatrix<f64>, f: &DMatrix<f64>, shifts: &ShiftSchedule) -> Result<DMatrix<f64>> {
    let mut history = adi_history(a, b, f, shifts)?;
    Ok(history.pop().expect("schedule is nonempty"))
}

/// Iterates `X_1, …, X_k` of [`adi_solve`].
pub fn adi_history(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    f: &DMatrix<f64>,
    shifts: &ShiftSchedule,
) -> Result<Vec<DMatrix<f64>>> {
    check_schedule(shifts)?;
    let (m, n) = (a.nrows(), b.nrows());
    if a.ncols() != m || b.ncols() != n || f.shape() != (m, n) {
        return Err(Error::DimensionMismatch("adi_solve shapes".into()));
    }
    let (im, in_) = (DMatrix::<f64>::identity(m, m), DMatrix::<f64>::identity(n, n));
    let residual = |x: &DMatrix<f64>| a * x - x * b - f;
    let mut x = DMatrix::<f64>::zeros(m, n);
    let mut out = Vec::with_capacity(shifts.len());
    // Each half step is written as a correction by the current residual:
    // (A − βI) X½ = X (B − βI) + F  ⇔  X½ = X − (A − βI)⁻¹ R(X), and
    // X (B − αI) = (A − αI) X½ − F  ⇔  X = X½ + R(X½)(B − αI)⁻¹.
    // Forming (A − αI) X½ directly cancels badly once α sits inside a wide Λ(A).
    for (alpha, beta) in shifts.pairs() {
        let half = &x - lu_solve(&(a - &im * beta), &residual(&x))?;
        let r = residual(&half);
        x = half + lu_solve(&(b - &in_ * alpha).transpose(), &r.transpose())?.transpose();
        check_finite(&x, "adi_solve")?;
        out.push(x.clone());
    }
    Ok(out)
}

/// Factored solution `X ≈ Z diag(d) Yᵀ`.
#[derive(Clone, Debug)]
pub struct FadiFactors {
    pub z: DMatrix<f64>,
    pub d: Vec<f64>,
    pub y: DMatrix<f64>,
}

impl FadiFactors {
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let mut zd = self.z.clone();
        for (j, &s) in self.d.iter().enumerate() {
            zd.column_mut(j).scale_mut(s);
        }
        zd * self.y.transpose()
    }
}

fn check_rhs(a: usize, rhs: &DMatrix<f64>, what: &str) -> Result<()> {
    if rhs.nrows() != a {
        return Err(Error::DimensionMismatch(format!("{what} has {} rows, operator {a}", rhs.nrows())));
    }
    Ok(())
}

fn hstack(blocks: &[DMatrix<f64>]) -> DMatrix<f64> {
    let rows = blocks.first().map_or(0, |b| b.nrows());
    let cols = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = DMatrix::zeros(rows, cols);
    let mut at = 0;
    for b in blocks {
        out.columns_mut(at, b.ncols()).copy_from(b);
        at += b.ncols();
    }
    out
}

/// Left factor blocks `Z_1, …, Z_k` of fADI for `AX + XCᵀ = MNᵀ`; only
/// shifted solves with `A` are needed. The poles `β` must lie in `−Λ(C)`.
fn z_blocks<S: ShiftedSolver + ?Sized>(a: &S, m: &DMatrix<f64>, shifts: &ShiftSchedule) -> Result<Vec<DMatrix<f64>>> {
    check_schedule(shifts)?;
    check_rhs(a.dim(), m, "left rhs factor")?;
    let (al, be) = (&shifts.alphas, &shifts.betas);
    let mut z = a.solve_shifted(-be[0], m)?;
    check_finite(&z, "fadi")?;
    let mut blocks = vec![z.clone()];
    for j in 1..shifts.len() {
        let step = a.solve_shifted(-be[j], &z)?;
        z += step * (be[j] - al[j - 1]);
        check_finite(&z, "fadi")?;
        blocks.push(z.clone());
    }
    Ok(blocks)
}

/// Factored ADI for `AX + XCᵀ = MNᵀ` (equivalently `AX − XB = MNᵀ` with
/// `B = −Cᵀ`). `Z` and `Y` have `k·ν` columns for a rank-`ν` right-hand side.
pub fn fadi_solve<SA, SC>(a: &SA, c: &SC, m: &DMatrix<f64>, n: &DMatrix<f64>, shifts: &ShiftSchedule) -> Result<FadiFactors>
where
    SA: ShiftedSolver + ?Sized,
    SC: ShiftedSolver + ?Sized,
{
    if m.ncols() != n.ncols() {
        return Err(Error::DimensionMismatch("rhs factors have different ranks".into()));
    }
    check_rhs(c.dim(), n, "right rhs factor")?;
    let zb = z_blocks(a, m, shifts)?;
    let (al, be) = (&shifts.alphas, &shifts.betas);
    let mut y = -c.solve_shifted(al[0], n)?;
    check_finite(&y, "fadi")?;
    let mut yb = vec![y.clone()];
    for j in 1..shifts.len() {
        let step = c.solve_shifted(al[j], &y)?;
        y -= step * (al[j] - be[j - 1]);
        check_finite(&y, "fadi")?;
        yb.push(y.clone());
    }
    let nu = m.ncols();
    let d = (0..shifts.len()).flat_map(|j| std::iter::repeat_n(be[j] - al[j], nu)).collect();
    Ok(FadiFactors { z: hstack(&zb), d, y: hstack(&yb) })
}

/// `[Z_1, …, Z_k]`, whose range contains the range of the `k`-step fADI
/// iterate for `AX + XCᵀ = MNᵀ` whatever `C` and `N` are.
pub fn fadi_column_space<S: ShiftedSolver + ?Sized>(a: &S, m: &DMatrix<f64>, shifts: &ShiftSchedule) -> Result<DMatrix<f64>> {
    Ok(hstack(&z_blocks(a, m, shifts)?))
}
