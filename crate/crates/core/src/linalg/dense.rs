//! Dense factorizations. Matrices live in `nalgebra` containers; the heavy
//! lifting (SVD, QR, eigendecompositions) is delegated to `faer`.

use faer::Mat;
use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::{Error, Result, Scalar};

/// Thin SVD `m = u * diag(sigma) * v^H`, singular values nonincreasing.
#[derive(Clone, Debug)]
pub struct Svd<T: Scalar> {
    pub u: DMatrix<T>,
    pub sigma: Vec<f64>,
    pub v: DMatrix<T>,
}

impl<T: Scalar> Svd<T> {
    /// Frobenius norm of the factored matrix.
    pub fn norm(&self) -> f64 {
        self.sigma.iter().map(|s| s * s).sum::<f64>().sqrt()
    }

    /// Leading `r` left singular vectors.
    pub fn leading_u(&self, r: usize) -> DMatrix<T> {
        self.u.columns(0, r).into_owned()
    }

    /// `diag(sigma[..r]) * v[:, ..r]^H`, an `r x n` matrix.
    pub fn leading_sv_adjoint(&self, r: usize) -> DMatrix<T> {
        let mut out = self.v.columns(0, r).adjoint();
        for (i, s) in self.sigma.iter().take(r).enumerate() {
            let s = T::from_real(*s);
            for x in out.row_mut(i).iter_mut() {
                *x *= s;
            }
        }
        out
    }
}

fn to_faer<T>(m: &DMatrix<T>) -> Mat<T>
where
    T: faer::traits::ComplexField + nalgebra::Scalar + Copy,
{
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer<T>(m: faer::MatRef<'_, T>) -> DMatrix<T>
where
    T: faer::traits::ComplexField + nalgebra::Scalar + Copy,
{
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub(crate) fn faer_thin_svd<T>(m: &DMatrix<T>) -> Result<Svd<T>>
where
    T: Scalar + faer::traits::ComplexField,
{
    let (rows, cols) = m.shape();
    let r = rows.min(cols);
    if r == 0 {
        return Ok(Svd {
            u: DMatrix::zeros(rows, 0),
            sigma: Vec::new(),
            v: DMatrix::zeros(cols, 0),
        });
    }
    if m.iter().any(|x| !x.is_finite_value()) {
        return Err(Error::NonFinite("matrix passed to SVD".into()));
    }
    let fm = to_faer(m);
    let svd = fm
        .thin_svd()
        .map_err(|e| Error::Decomposition(format!("svd: {e:?}")))?;
    let sigma = svd
        .S()
        .column_vector()
        .iter()
        .map(|s| s.parts().0.max(0.0))
        .collect();
    Ok(Svd {
        u: from_faer(svd.U()),
        sigma,
        v: from_faer(svd.V()),
    })
}

pub(crate) fn faer_thin_qr<T>(m: &DMatrix<T>) -> (DMatrix<T>, DMatrix<T>)
where
    T: Scalar + faer::traits::ComplexField,
{
    let (rows, cols) = m.shape();
    if rows == 0 || cols == 0 {
        let r = rows.min(cols);
        return (DMatrix::zeros(rows, r), DMatrix::zeros(r, cols));
    }
    let qr = to_faer(m).qr();
    (from_faer(qr.compute_thin_Q().as_ref()), from_faer(qr.thin_R()))
}

/// Orthonormal basis of the column space of `m` (thin Householder `Q`).
pub fn orthonormal_basis<T: Scalar>(m: &DMatrix<T>) -> DMatrix<T> {
    T::thin_qr(m).0
}

/// Eigendecomposition of a real symmetric matrix; eigenvalues ascending.
pub fn symmetric_eigen(a: &DMatrix<f64>) -> Result<(Vec<f64>, DMatrix<f64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::DimensionMismatch("symmetric_eigen needs a square matrix".into()));
    }
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let eig = to_faer(a)
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| Error::Decomposition(format!("symmetric eigen: {e:?}")))?;
    let values = eig.S().column_vector().iter().copied().collect();
    Ok((values, from_faer(eig.U())))
}

/// Eigenvalues and (column) eigenvectors of a general real matrix.
pub fn general_eigen(a: &DMatrix<f64>) -> Result<(Vec<Complex64>, DMatrix<Complex64>)> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::DimensionMismatch("general_eigen needs a square matrix".into()));
    }
    if n == 0 {
        return Ok((Vec::new(), DMatrix::zeros(0, 0)));
    }
    let eig = to_faer(a)
        .eigen()
        .map_err(|e| Error::Decomposition(format!("eigen: {e:?}")))?;
    let values = eig.S().column_vector().iter().copied().collect();
    Ok((values, from_faer(eig.U())))
}

/// Whether `a` is symmetric up to a relative tolerance.
pub fn is_symmetric(a: &DMatrix<f64>, rel_tol: f64) -> bool {
    if a.nrows() != a.ncols() {
        return false;
    }
    let scale = a.amax().max(f64::MIN_POSITIVE);
    let n = a.nrows();
    for j in 0..n {
        for i in (j + 1)..n {
            if (a[(i, j)] - a[(j, i)]).abs() > rel_tol * scale {
                return false;
            }
        }
    }
    true
}

/// Solves `a x = b` by LU with partial pivoting.
pub fn lu_solve<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>) -> Result<DMatrix<T>> {
    if a.nrows() != a.ncols() || a.nrows() != b.nrows() {
        return Err(Error::DimensionMismatch("lu_solve shapes".into()));
    }
    a.clone()
        .lu()
        .solve(b)
        .ok_or_else(|| Error::Singular("dense LU found a zero pivot".into()))
}
