//! Scalar abstraction shared by the real and complex code paths.

use nalgebra::{ComplexField, DMatrix};
use num_complex::Complex64;

use crate::linalg::dense::{self, Svd};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Real,
    Complex,
}

impl ScalarKind {
    pub fn code(self) -> u8 {
        match self {
            ScalarKind::Real => 0,
            ScalarKind::Complex => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(ScalarKind::Real),
            1 => Some(ScalarKind::Complex),
            _ => None,
        }
    }
}

/// Element type of tensors and matrices: `f64` or `Complex64`.
pub trait Scalar:
    ComplexField<RealField = f64> + Copy + Default + Send + Sync + std::fmt::Debug + 'static
{
    const KIND: ScalarKind;

    /// Real and imaginary parts.
    fn parts(self) -> (f64, f64);

    /// Builds a value from parts; the imaginary part is dropped for reals.
    fn from_parts(re: f64, im: f64) -> Self;

    fn is_finite_value(self) -> bool {
        let (re, im) = self.parts();
        re.is_finite() && im.is_finite()
    }

    /// Thin SVD `m = U diag(sigma) V^H` with nonincreasing singular values.
    fn thin_svd(m: &DMatrix<Self>) -> Result<Svd<Self>>;

    /// Thin Householder QR; `Q` has `min(rows, cols)` orthonormal columns.
    fn thin_qr(m: &DMatrix<Self>) -> (DMatrix<Self>, DMatrix<Self>);
}

impl Scalar for f64 {
    const KIND: ScalarKind = ScalarKind::Real;

    fn parts(self) -> (f64, f64) {
        (self, 0.0)
    }

    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }

    fn thin_svd(m: &DMatrix<Self>) -> Result<Svd<Self>> {
        dense::faer_thin_svd(m)
    }

    fn thin_qr(m: &DMatrix<Self>) -> (DMatrix<Self>, DMatrix<Self>) {
        dense::faer_thin_qr(m)
    }
}

impl Scalar for Complex64 {
    const KIND: ScalarKind = ScalarKind::Complex;

    fn parts(self) -> (f64, f64) {
        (self.re, self.im)
    }

    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }

    fn thin_svd(m: &DMatrix<Self>) -> Result<Svd<Self>> {
        dense::faer_thin_svd(m)
    }

    fn thin_qr(m: &DMatrix<Self>) -> (DMatrix<Self>, DMatrix<Self>) {
        dense::faer_thin_qr(m)
    }
}
