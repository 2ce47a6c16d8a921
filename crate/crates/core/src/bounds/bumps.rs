//! Rank bound for sums of Gaussian bumps sampled on a grid.

use super::bessel::bessel_i_scaled_all;
use crate::{Error, Result};

/// Largest degree the scan will try.
pub const MAX_DEGREE: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BumpBound {
    /// Smallest degree `ℓ` passing the test.
    pub degree: usize,
    /// `ℓ + 1`.
    pub s1: usize,
}

/// Smallest `ℓ` with `6 M n^{3/2} e^{−γ/4} I_{⌊ℓ/2⌋+1}(γ/4) <= ε`, tested
/// exactly as written (absolute left side against `ε`, no norm scaling).
pub fn gaussian_bump_bound(bumps: usize, n: usize, gamma: f64, eps: f64) -> Result<BumpBound> {
    if bumps == 0 || n == 0 {
        return Err(Error::InvalidArgument("bump count and grid size must be positive".into()));
    }
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::InvalidArgument(format!("bump width {gamma} must be positive")));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidArgument(format!("accuracy {eps} must lie in (0, 1)")));
    }
    let x = gamma / 4.0;
    let scale = 6.0 * bumps as f64 * (n as f64).powf(1.5);
    // The left side depends on ℓ only through j = ⌊ℓ/2⌋ + 1, so the smallest
    // ℓ for a passing j is 2(j − 1). Grow the table of orders until one passes.
    let max_order = MAX_DEGREE / 2 + 1;
    let mut top = 64usize.max(2 * x.ceil() as usize);
    loop {
        top = top.min(max_order);
        let table = bessel_i_scaled_all(top, x)?;
        if let Some(j) = (1..=top).find(|&j| scale * table[j] <= eps) {
            let degree = 2 * (j - 1);
            return Ok(BumpBound { degree, s1: degree + 1 });
        }
        if top == max_order {
            return Err(Error::InvalidArgument(format!("no degree up to {MAX_DEGREE} satisfies the bump test")));
        }
        top *= 4;
    }
}
