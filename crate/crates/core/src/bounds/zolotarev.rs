//! Closed-form upper bounds on Zolotarev numbers for interval pairs and for
//! pairs of disks centred on the real axis.

use std::f64::consts::PI;

use crate::{Error, Result};

/// Largest `k` any of the ceiling formulas may return.
const K_CAP: usize = 1 << 20;

/// `min(1, 4 exp(−π² k / log(16γ)))`.
pub fn zolotarev_interval_bound(gamma: f64, k: usize) -> Result<f64> {
    if !(16.0 * gamma > 1.0) || !gamma.is_finite() {
        return Err(Error::InvalidArgument(format!("cross ratio {gamma} must exceed 1/16")));
    }
    if k == 0 {
        return Ok(1.0);
    }
    Ok((4.0 * (-PI * PI * k as f64 / (16.0 * gamma).ln()).exp()).min(1.0))
}

/// Cross ratio of `E_j = [ja, jb]` and `F_j = [−(d−j)b, −(d−j)a]`, the
/// split-`j` pair of `d` identical spectra in `[a, b]`.
pub fn gamma_interval(a: f64, b: f64, j: usize, d: usize) -> Result<f64> {
    if !(a > 0.0) || a > b {
        return Err(Error::InvalidGeometry(format!("need 0 < a <= b, got [{a}, {b}]")));
    }
    if j == 0 || j >= d {
        return Err(Error::InvalidArgument(format!("split {j} out of range for order {d}")));
    }
    let (j, d) = (j as f64, d as f64);
    Ok((d * a + j * (b - a)) * (d * b - j * (b - a)) / (a * b * d * d))
}

/// Cross ratio of `E_j = [a, b]` and `F_j = [−(d−1)b, −(d−1)a]` (one mode
/// against the other `d − 1`).
pub fn gamma_interval_single(a: f64, b: f64, d: usize) -> Result<f64> {
    gamma_interval(a, b, 1, d)
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must lie in (0, 1)")));
    }
    Ok(())
}

/// `⌈log(16γ) log(4/tol) / π²⌉`, bumped until the interval bound is `<= tol`.
/// Callers pass `tol = ε/√d`.
pub fn k_for_epsilon_interval(gamma: f64, tol: f64) -> Result<usize> {
    check_tol(tol)?;
    zolotarev_interval_bound(gamma, 0)?;
    let raw = ((16.0 * gamma).ln() * (4.0 / tol).ln() / (PI * PI)).ceil();
    let mut k = (raw.max(1.0) as usize).min(K_CAP);
    while zolotarev_interval_bound(gamma, k)? > tol && k < K_CAP {
        k += 1;
    }
    Ok(k)
}

/// Annulus modulus of two disjoint disks `|z − c1| <= r1`, `|z − c2| <= r2`:
/// with `S = (D² − r1² − r2²)/(r1 r2)`, `ρ = (S + √(S² − 4))/2`.
pub fn disk_pair_rho(c1: f64, r1: f64, c2: f64, r2: f64) -> Result<f64> {
    let dist = (c1 - c2).abs();
    if !(r1 > 0.0 && r2 > 0.0) || dist <= r1 + r2 {
        return Err(Error::InvalidGeometry(format!(
            "disks ({c1}, {r1}) and ({c2}, {r2}) are not separated"
        )));
    }
    let s = (dist * dist - r1 * r1 - r2 * r2) / (r1 * r2);
    Ok(0.5 * (s + (s * s - 4.0).sqrt()))
}

/// Split-`j` modulus for `d` identical disks `|z − z0| <= η` via
/// `ξ = (d²z0² − ((d−j)² + j²)η²)² − 4j²(d−j)²η⁴` and
/// `ρ = 2j(d−j)η² / (d²z0² − ((d−j)² + j²)η² − √ξ)`.
pub fn disk_rho(z0: f64, eta: f64, j: usize, d: usize) -> Result<f64> {
    if !(eta > 0.0 && eta < z0) {
        return Err(Error::InvalidGeometry(format!("disk needs 0 < eta < z0, got z0 {z0}, eta {eta}")));
    }
    if j == 0 || j >= d {
        return Err(Error::InvalidArgument(format!("split {j} out of range for order {d}")));
    }
    let (jf, df) = (j as f64, d as f64);
    let m = df - jf;
    let base = df * df * z0 * z0 - (m * m + jf * jf) * eta * eta;
    let xi = base * base - 4.0 * jf * jf * m * m * eta.powi(4);
    if xi < 0.0 || base <= 0.0 {
        return Err(Error::InvalidGeometry(format!("disk split {j} has xi = {xi}")));
    }
    // base − √ξ cancels badly when ρ is large; use the product form instead.
    let c = 2.0 * jf * m * eta * eta;
    Ok((base + xi.sqrt()) / c)
}

/// `ρ^{−k}`.
pub fn rho_power_bound(rho: f64, k: usize) -> f64 {
    rho.powi(-(k.min(i32::MAX as usize) as i32)).min(1.0)
}

/// `ρ_j^{−k}` for `d` identical disks at split `j`.
pub fn zolotarev_disk_bound(z0: f64, eta: f64, j: usize, d: usize, k: usize) -> Result<f64> {
    Ok(rho_power_bound(disk_rho(z0, eta, j, d)?, k))
}

/// `max(1, ⌈log(1/tol) / log ρ⌉)`, bumped until `ρ^{−k} <= tol`.
pub fn k_for_epsilon_disk(rho: f64, tol: f64) -> Result<usize> {
    check_tol(tol)?;
    if !(rho > 1.0) {
        return Err(Error::InvalidGeometry(format!("annulus modulus {rho} must exceed 1")));
    }
    let raw = ((1.0 / tol).ln() / rho.ln()).ceil();
    let mut k = (raw.max(1.0) as usize).min(K_CAP);
    while rho_power_bound(rho, k) > tol && k < K_CAP {
        k += 1;
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::spectral::interval_cross_ratio;
    use proptest::prelude::*;

    #[test]
    fn interval_bound_values() {
        assert_eq!(zolotarev_interval_bound(3.0, 0).unwrap(), 1.0);
        let v = zolotarev_interval_bound(1.0, 1).unwrap();
        assert!((v - 4.0 * (-PI * PI / 16f64.ln()).exp()).abs() < 1e-15);
        assert!((v - 0.113_788_6).abs() < 1e-7);
        let (a, b) = (zolotarev_interval_bound(50.0, 3).unwrap(), zolotarev_interval_bound(50.0, 6).unwrap());
        assert!((b - a * a / 4.0).abs() < 1e-15);
        assert!(zolotarev_interval_bound(1.0 / 16.0, 2).is_err());
    }

    #[test]
    fn gamma_interval_closed_forms() {
        assert_eq!(gamma_interval(2.0, 2.0, 1, 5).unwrap(), 1.0);
        for n in [10.0f64, 100.0, 500.0] {
            let g = gamma_interval(1.0 / 3.0, (3.0 * n - 2.0) / 3.0, 1, 3).unwrap();
            let expect = 16.0 * n * (2.0 * n - 1.0) / (3.0 * n - 2.0);
            assert!((16.0 * g - expect).abs() < 1e-12 * expect);
            let g = gamma_interval(1.0, n * n, 1, 3).unwrap();
            let expect = 16.0 * (n * n + 2.0) * (2.0 * n * n + 1.0) / (9.0 * n * n);
            assert!((16.0 * g - expect).abs() < 1e-12 * expect);
        }
        assert!(gamma_interval(0.0, 1.0, 1, 3).is_err());
        assert!(gamma_interval(1.0, 2.0, 3, 3).is_err());
    }

    #[test]
    fn gamma_interval_matches_cross_ratio() {
        let (a, b) = (0.3, 7.0);
        for d in 2..6 {
            for j in 1..d {
                let (jf, m) = (j as f64, (d - j) as f64);
                let g = interval_cross_ratio(jf * a, jf * b, -m * b, -m * a).unwrap();
                assert!((g - gamma_interval(a, b, j, d).unwrap()).abs() < 1e-12 * g);
            }
        }
    }

    #[test]
    fn hilbert_k_example() {
        let g = gamma_interval(1.0 / 3.0, 28.0 / 3.0, 1, 3).unwrap();
        assert_eq!(k_for_epsilon_interval(g, 1e-10 / 3f64.sqrt()).unwrap(), 12);
        let k1 = k_for_epsilon_interval(1.0, 1.0 - 1e-12).unwrap();
        assert!(k1 >= 1);
    }

    #[test]
    fn disk_rho_matches_pair_formula() {
        let (z0, eta, d) = (2.0, 1.0, 3);
        for j in 1..d {
            let (jf, m) = (j as f64, (d - j) as f64);
            let r = disk_rho(z0, eta, j, d).unwrap();
            let pair = disk_pair_rho(jf * z0, jf * eta, -m * z0, m * eta).unwrap();
            assert!(r > 1.0);
            assert!((r - pair).abs() < 1e-12 * r);
            // literal printed form of the same quantity
            let base = 9.0 * z0 * z0 - (m * m + jf * jf) * eta * eta;
            let xi = base * base - 4.0 * jf * jf * m * m * eta.powi(4);
            let lit = 2.0 * jf * m * eta * eta / (base - xi.sqrt());
            assert!((r - lit).abs() < 1e-10 * r);
        }
        assert_eq!(zolotarev_disk_bound(2.0, 1.0, 1, 3, 0).unwrap(), 1.0);
        assert!(zolotarev_disk_bound(2.0, 1e-6, 1, 3, 1).unwrap() < 1e-10);
        assert!(disk_rho(1.0, 1.0, 1, 3).is_err());
    }

    #[test]
    fn disk_k() {
        let rho = disk_rho(2.0, 1.0, 1, 3).unwrap();
        let tol = 1e-8 / 3f64.sqrt();
        let k = k_for_epsilon_disk(rho, tol).unwrap();
        assert!(rho_power_bound(rho, k) <= tol);
        assert!(rho_power_bound(rho, k - 1) > tol);
    }

    #[test]
    fn k_monotone_in_eps() {
        let mut prev = 0;
        for e in 1..15 {
            let k = k_for_epsilon_interval(123.0, 10f64.powi(-e)).unwrap();
            assert!(k >= prev);
            prev = k;
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn k_achieves_tolerance(lg in -1.1f64..12.0, le in -15.0f64..-0.01) {
            let gamma = 10f64.powf(lg);
            let tol = 10f64.powf(le);
            let k = k_for_epsilon_interval(gamma, tol).unwrap();
            prop_assert!(zolotarev_interval_bound(gamma, k).unwrap() <= tol);
            prop_assert!(k == 1 || zolotarev_interval_bound(gamma, k - 1).unwrap() > tol);
        }
    }
}
