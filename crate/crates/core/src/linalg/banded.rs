//! Band matrices and an LU factorization with partial pivoting, generic over
//! the scalar type so real operators can be shifted by complex values.

use nalgebra::DMatrix;

use crate::{Error, Result, Scalar};

/// Square real matrix with `kl` sub- and `ku` super-diagonals.
#[derive(Clone, Debug, PartialEq)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    /// Column-major band storage: `A(i, j)` at `(ku + i - j) + (kl + ku + 1) * j`.
    data: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        Self { n, kl, ku, data: vec![0.0; (kl + ku + 1) * n] }
    }

    /// Builds from diagonals listed from the lowest (`-kl`) to the highest
    /// (`+ku`); diagonal `o` has length `n - |o|`.
    pub fn from_diagonals(n: usize, kl: usize, ku: usize, diagonals: &[Vec<f64>]) -> Result<Self> {
        if diagonals.len() != kl + ku + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} diagonals, got {}",
                kl + ku + 1,
                diagonals.len()
            )));
        }
        let mut m = Self::zeros(n, kl, ku);
        for (slot, diag) in diagonals.iter().enumerate() {
            let offset = slot as isize - kl as isize;
            let len = n - offset.unsigned_abs().min(n);
            if diag.len() != len {
                return Err(Error::DimensionMismatch(format!(
                    "diagonal {offset} has length {} instead of {len}",
                    diag.len()
                )));
            }
            for (t, &v) in diag.iter().enumerate() {
                let (i, j) = if offset >= 0 { (t, t + offset as usize) } else { (t + (-offset) as usize, t) };
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self { n: values.len(), kl: 0, ku: 0, data: values.to_vec() }
    }

    /// Symmetric tridiagonal matrix from its diagonal and off-diagonal.
    pub fn symmetric_tridiagonal(diag: &[f64], off: &[f64]) -> Result<Self> {
        Self::from_diagonals(diag.len(), 1, 1, &[off.to_vec(), diag.to_vec(), off.to_vec()])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.kl
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.ku
    }

    fn in_band(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && i + self.ku >= j && j + self.kl >= i
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if self.in_band(i, j) {
            self.data[(self.ku + i - j) + (self.kl + self.ku + 1) * j]
        } else {
            0.0
        }
    }

    /// Sets an entry inside the band; panics outside it.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        assert!(self.in_band(i, j), "entry ({i}, {j}) is outside the band");
        let w = self.kl + self.ku + 1;
        self.data[(self.ku + i - j) + w * j] = v;
    }

    /// Row range `lo..hi` of nonzeros in column `j`.
    pub fn column_range(&self, j: usize) -> (usize, usize) {
        (j.saturating_sub(self.ku), (j + self.kl + 1).min(self.n))
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n, self.ku, self.kl);
        for j in 0..self.n {
            let (lo, hi) = self.column_range(j);
            for i in lo..hi {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        self.kl == self.ku
            && (0..self.n).all(|j| {
                let (lo, hi) = self.column_range(j);
                (lo..hi).all(|i| self.get(i, j) == self.get(j, i))
            })
    }

    /// `self * x` column by column.
    pub fn apply<T: Scalar>(&self, x: &DMatrix<T>) -> DMatrix<T> {
        assert_eq!(x.nrows(), self.n);
        let mut y = DMatrix::zeros(self.n, x.ncols());
        for c in 0..x.ncols() {
            for j in 0..self.n {
                let xj = x[(j, c)];
                let (lo, hi) = self.column_range(j);
                for i in lo..hi {
                    y[(i, c)] += T::from_real(self.get(i, j)) * xj;
                }
            }
        }
        y
    }

    /// Nonzero pattern as `(row, col, value)` triplets.
    pub fn triplets(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            let (lo, hi) = self.column_range(j);
            for i in lo..hi {
                let v = self.get(i, j);
                if v != 0.0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    /// LU factorization of `diag(scale) * self + shift * I`.
    pub fn factor_shifted<T: Scalar>(&self, scale: Option<&[f64]>, shift: T) -> Result<BandLu<T>> {
        BandLu::new(self, scale, T::one(), &|_| shift)
    }

    /// LU factorization of `coef * self + diag(diag)`.
    pub fn factor_combination<T: Scalar>(&self, coef: T, diag: &[T]) -> Result<BandLu<T>> {
        assert_eq!(diag.len(), self.n);
        BandLu::new(self, None, coef, &|j| diag[j])
    }

    pub fn factor<T: Scalar>(&self) -> Result<BandLu<T>> {
        BandLu::new(self, None, T::one(), &|_| T::zero())
    }
}

/// LU factors of a band matrix, LAPACK `gbtrf` layout.
#[derive(Clone, Debug)]
pub struct BandLu<T: Scalar> {
    n: usize,
    kl: usize,
    ku: usize,
    ab: Vec<T>,
    pivots: Vec<usize>,
}

impl<T: Scalar> BandLu<T> {
    /// Factors `coef * diag(scale) * a + diag(extra)`.
    fn new(a: &BandMatrix, scale: Option<&[f64]>, coef: T, extra: &dyn Fn(usize) -> T) -> Result<Self> {
        let (n, kl, ku) = (a.n, a.kl, a.ku);
        let kv = kl + ku;
        let ld = 2 * kl + ku + 1;
        let mut ab = vec![T::zero(); ld * n];
        for j in 0..n {
            let (lo, hi) = a.column_range(j);
            for i in lo..hi {
                let s = scale.map_or(1.0, |s| s[i]);
                ab[kv + i - j + ld * j] = coef * T::from_real(s * a.get(i, j));
            }
            ab[kv + ld * j] += extra(j);
        }
        let mut pivots = vec![0usize; n];
        let mut ju = 0usize;
        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let mut jp = 0;
            let mut best = -1.0;
            for i in 0..=km {
                let v = ab[kv + i + ld * j].modulus();
                if v > best {
                    best = v;
                    jp = i;
                }
            }
            pivots[j] = j + jp;
            if best == 0.0 || !best.is_finite() {
                return Err(Error::Singular(format!("band LU pivot {j} vanished")));
            }
            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    ab.swap(kv + j - c + ld * c, kv + (j + jp) - c + ld * c);
                }
            }
            let piv = ab[kv + ld * j];
            for i in 1..=km {
                ab[kv + i + ld * j] /= piv;
            }
            for c in (j + 1)..=ju {
                let u = ab[kv + j - c + ld * c];
                if u == T::zero() {
                    continue;
                }
                for i in 1..=km {
                    let l = ab[kv + i + ld * j];
                    ab[kv + j + i - c + ld * c] -= l * u;
                }
            }
        }
        Ok(Self { n, kl, ku, ab, pivots })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn ld(&self) -> usize {
        2 * self.kl + self.ku + 1
    }

    /// Solves in place for every column of `b`.
    pub fn solve_in_place(&self, b: &mut DMatrix<T>) {
        assert_eq!(b.nrows(), self.n);
        let (n, kl, kv, ld) = (self.n, self.kl, self.kl + self.ku, self.ld());
        for c in 0..b.ncols() {
            let mut col = b.column_mut(c);
            for j in 0..n {
                let p = self.pivots[j];
                if p != j {
                    col.swap_rows(j, p);
                }
                let bj = col[j];
                if bj != T::zero() {
                    for i in 1..=kl.min(n - 1 - j) {
                        let l = self.ab[kv + i + ld * j];
                        col[j + i] -= l * bj;
                    }
                }
            }
            for j in (0..n).rev() {
                let bj = col[j] / self.ab[kv + ld * j];
                col[j] = bj;
                if bj != T::zero() {
                    for i in j.saturating_sub(kv)..j {
                        col[i] -= self.ab[kv + i - j + ld * j] * bj;
                    }
                }
            }
        }
    }

    pub fn solve(&self, b: &DMatrix<T>) -> DMatrix<T> {
        let mut x = b.clone();
        self.solve_in_place(&mut x);
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn sample(n: usize, kl: usize, ku: usize) -> BandMatrix {
        let mut m = BandMatrix::zeros(n, kl, ku);
        for j in 0..n {
            let (lo, hi) = m.column_range(j);
            for i in lo..hi {
                let v = ((3 * i + 7 * j) % 11) as f64 - 5.0;
                // triangular cases get a dominant diagonal; the others need pivoting
                let diag = if kl == 0 || ku == 0 { v + 10.5 } else { v * 0.1 + 0.05 };
                m.set(i, j, if i == j { diag } else { v });
            }
        }
        m
    }

    #[test]
    fn pivoted_solve_matches_dense() {
        for &(n, kl, ku) in &[(1, 0, 0), (6, 1, 1), (9, 2, 1), (12, 0, 3), (10, 3, 0), (15, 2, 2)] {
            let a = sample(n, kl, ku);
            let b = DMatrix::from_fn(n, 2, |i, c| (i as f64 + 1.0) * (c as f64 + 0.5));
            let x = a.factor::<f64>().unwrap().solve(&b);
            let dense = a.to_dense();
            assert!((&dense * &x - &b).norm() < 1e-10 * b.norm() * dense.norm());
            assert_eq!(a.apply(&x).shape(), b.shape());
            assert!((a.apply(&x) - &b).norm() < 1e-9 * b.norm());
        }
    }

    #[test]
    fn complex_shift() {
        let a = sample(8, 2, 2);
        let shift = Complex64::new(0.3, -1.7);
        let b = DMatrix::from_fn(8, 1, |i, _| Complex64::new(i as f64, 1.0));
        let x = a.factor_shifted(None, shift).unwrap().solve(&b);
        let dense = a.to_dense().map(Complex64::from) + DMatrix::identity(8, 8) * shift;
        assert!((dense * x - &b).norm() < 1e-11 * b.norm());
    }

    #[test]
    fn scaled_shift_and_transpose() {
        let a = sample(7, 1, 2);
        let s = [1.0, 2.0, 0.5, 3.0, 1.5, 0.25, 4.0];
        let b = DMatrix::from_fn(7, 1, |i, _| 1.0 - i as f64);
        let x = a.factor_shifted(Some(&s), 2.0).unwrap().solve(&b);
        let dense = DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&s)) * a.to_dense()
            + DMatrix::identity(7, 7) * 2.0;
        assert!((dense * x - &b).norm() < 1e-11 * b.norm());
        assert_eq!(a.transpose().to_dense(), a.to_dense().transpose());
        assert!(!a.is_symmetric());
        assert!(BandMatrix::symmetric_tridiagonal(&[2.0; 4], &[-1.0; 3]).unwrap().is_symmetric());
    }

    #[test]
    fn singular_is_reported() {
        let a = BandMatrix::diagonal(&[1.0, 0.0, 2.0]);
        assert!(matches!(a.factor::<f64>(), Err(Error::Singular(_))));
    }
}
