//! Modified Bessel functions of the first kind, integer order.

use crate::{Error, Result};

/// Largest supported order.
pub const MAX_ORDER: usize = 1_000_000;
/// Above this argument `I_j(x)` overflows or loses all meaning in `f64`.
pub const MAX_ARGUMENT: f64 = 700.0;

const RESCALE: f64 = 1e250;

fn check(order: usize, x: f64) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::InvalidArgument(format!("Bessel order {order} exceeds {MAX_ORDER}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("Bessel argument {x} must be finite and nonnegative")));
    }
    Ok(())
}

/// `e^{−x} I_j(x)` for `j = 0..=max_order`, by Miller's downward recurrence
/// `I_{j−1} = (2j/x) I_j + I_{j+1}` normalized with `e^x = I_0 + 2 Σ_{j≥1} I_j`.
pub fn bessel_i_scaled_all(max_order: usize, x: f64) -> Result<Vec<f64>> {
    check(max_order, x)?;
    let mut out = vec![0.0; max_order + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return Ok(out);
    }
    let big = max_order.max(x.ceil() as usize) as f64;
    let start = (big + 40.0 + 8.0 * big.sqrt()) as usize;
    let mut above = 0.0f64; // I_{j+1}
    let mut cur = 1e-300f64; // I_j
    let mut norm = 0.0f64;
    for j in (1..=start).rev() {
        if j <= max_order {
            out[j] = cur;
        }
        norm += 2.0 * cur;
        let below = (2.0 * j as f64 / x) * cur + above;
        above = cur;
        cur = below;
        if cur.abs() > RESCALE {
            for v in out.iter_mut().skip(j.saturating_sub(1)) {
                *v /= RESCALE;
            }
            above /= RESCALE;
            cur /= RESCALE;
            norm /= RESCALE;
        }
    }
    out[0] = cur;
    norm += cur;
    for v in &mut out {
        *v /= norm;
    }
    Ok(out)
}

/// `e^{−x} I_order(x)`; finite for every `x >= 0`.
pub fn bessel_i_scaled(order: usize, x: f64) -> Result<f64> {
    Ok(bessel_i_scaled_all(order, x)?[order])
}

/// `I_order(x)` for `0 <= x <= 700`.
pub fn bessel_i(order: usize, x: f64) -> Result<f64> {
    check(order, x)?;
    if x > MAX_ARGUMENT {
        return Err(Error::InvalidArgument(format!("Bessel argument {x} overflows (limit {MAX_ARGUMENT})")));
    }
    Ok(bessel_i_scaled(order, x)? * x.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// `Σ_m (x/2)^{2m+j} / (m! (m+j)!)` summed until terms vanish.
    fn series(j: usize, x: f64) -> f64 {
        let h = x / 2.0;
        let mut term = (0..j).fold(1.0, |t, i| t * h / (i + 1) as f64);
        let mut sum = term;
        for m in 1..1000 {
            term *= h * h / (m as f64 * (m + j) as f64);
            sum += term;
            if term < 1e-18 * sum {
                break;
            }
        }
        sum
    }

    #[test]
    fn values_at_zero_and_one() {
        assert_eq!(bessel_i(0, 0.0).unwrap(), 1.0);
        assert_eq!(bessel_i(3, 0.0).unwrap(), 0.0);
        let v = bessel_i(0, 1.0).unwrap();
        assert!((v - 1.266_065_877_752_008_4).abs() < 1e-14);
    }

    #[test]
    fn recurrence_identity() {
        let x = 5.0;
        for j in 1..=10 {
            let lhs = bessel_i(j - 1, x).unwrap() - bessel_i(j + 1, x).unwrap();
            let rhs = 2.0 * j as f64 / x * bessel_i(j, x).unwrap();
            assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs());
        }
    }

    #[test]
    fn large_arguments() {
        assert!(bessel_i(1, 701.0).is_err());
        let s = bessel_i_scaled(2, 2500.0).unwrap();
        // asymptotically e^{-x} I_j(x) ~ 1/√(2πx)
        assert!((s * (2.0 * std::f64::consts::PI * 2500.0).sqrt() - 1.0).abs() < 1e-3);
        let tiny = bessel_i_scaled(5000, 10.0).unwrap();
        assert!(tiny >= 0.0 && tiny < 1e-300);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]
        #[test]
        fn matches_power_series(j in 0usize..60, x in 0.01f64..40.0) {
            let want = series(j, x);
            let got = bessel_i(j, x).unwrap();
            prop_assume!(want > 1e-290);
            prop_assert!((got - want).abs() <= 1e-12 * want, "j={} x={} got {} want {}", j, x, got, want);
        }
    }
}
