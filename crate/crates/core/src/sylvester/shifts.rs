//! ADI shift parameters: the classical optimal Zolotarev shifts for two real
//! intervals and the common inverse points for two disks.

use std::f64::consts::PI;

use crate::bounds::{
    disk_pair_rho, interval_cross_ratio, rho_power_bound, zolotarev_interval_bound, Region, SeparatedPair,
};
use crate::{Error, Result};

/// Below this `κ` the elliptic construction is replaced by geometric spacing.
pub const KAPPA_FLOOR: f64 = 1e-14;

/// Shift pairs for ADI on `AX − XB = F`: zeros `alphas` near `Λ(A)`, poles
/// `betas` near `Λ(B)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ShiftSchedule {
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    /// Zolotarev bound achieved by these `k` pairs.
    pub predicted_factor: f64,
}

impl ShiftSchedule {
    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.alphas.iter().copied().zip(self.betas.iter().copied())
    }
}

/// Complete elliptic integral `K` and the AGM sequence for complementary
/// modulus `kp` (modulus `√(1 − kp²)`).
struct Agm {
    kp: f64,
    a: Vec<f64>,
    c: Vec<f64>,
}

impl Agm {
    fn new(kp: f64) -> Self {
        let mut a = vec![1.0];
        let mut b = kp;
        let mut c = vec![(1.0 - kp * kp).max(0.0).sqrt()];
        for _ in 0..40 {
            let an = *a.last().unwrap();
            if c.last().unwrap().abs() <= 1e-15 * an {
                break;
            }
            c.push(0.5 * (an - b));
            a.push(0.5 * (an + b));
            b = (an * b).sqrt();
        }
        Self { kp, a, c }
    }

    fn complete_k(&self) -> f64 {
        PI / (2.0 * self.a.last().unwrap())
    }

    /// `(sn, cn, dn)` at `u`. Past `K/2` the reflection `u ↦ K − u` keeps the
    /// `cos φ0 / cos(φ1 − φ0)` quotient away from `0/0`.
    fn jacobi(&self, u: f64) -> (f64, f64, f64) {
        let big_k = self.complete_k();
        let kp = self.kp;
        if u > 0.5 * big_k && u <= 1.5 * big_k {
            let (s, c, d) = self.jacobi_direct(big_k - u);
            return (c / d, kp * s / d, kp / d);
        }
        self.jacobi_direct(u)
    }

    fn jacobi_direct(&self, u: f64) -> (f64, f64, f64) {
        let n = self.a.len() - 1;
        let mut phi = vec![0.0; n + 1];
        phi[n] = 2f64.powi(n as i32) * self.a[n] * u;
        for j in (1..=n).rev() {
            phi[j - 1] = 0.5 * (phi[j] + (self.c[j] * phi[j].sin() / self.a[j]).asin());
        }
        let (s, c) = phi[0].sin_cos();
        let dn = if n == 0 { 1.0 } else { c / (phi[1] - phi[0]).cos() };
        (s, c, dn)
    }
}

/// `K(m)` with `m = 1 − kp²` given through the complementary modulus `kp`.
pub fn elliptic_k(kp: f64) -> f64 {
    Agm::new(kp).complete_k()
}

/// Jacobi `(sn, cn, dn)(u | m)` with `m = 1 − kp²`.
pub fn jacobi_sn_cn_dn(u: f64, kp: f64) -> (f64, f64, f64) {
    Agm::new(kp).jacobi(u)
}

/// Möbius-normalized parameter: two intervals with cross ratio `γ` map to
/// `[κ, 1]` and `[−1, −κ]` with `(1 + κ)² / (4κ) = γ`.
fn kappa_from_gamma(gamma: f64) -> f64 {
    1.0 / ((2.0 * gamma - 1.0) + 2.0 * (gamma * (gamma - 1.0)).max(0.0).sqrt())
}

/// Optimal shifts for `E = [a, b]` (zeros) and `F = [c, d]` (poles), which
/// must be disjoint. `k` pairs.
pub fn adi_shifts_interval(e: (f64, f64), f: (f64, f64), k: usize) -> Result<ShiftSchedule> {
    if k == 0 {
        return Err(Error::InvalidArgument("at least one shift pair is needed".into()));
    }
    let ((a, b), (c, d)) = (e, f);
    let gamma = interval_cross_ratio(a, b, c, d)?;
    let kappa = kappa_from_gamma(gamma);
    let w: Vec<f64> = if kappa < KAPPA_FLOOR {
        (1..=k).map(|j| kappa.powf((2 * j - 1) as f64 / (2 * k) as f64)).collect()
    } else {
        let agm = Agm::new(kappa);
        let big_k = agm.complete_k();
        (1..=k).map(|j| agm.jacobi((2 * j - 1) as f64 * big_k / (2 * k) as f64).2).collect()
    };
    // Inverse of the map sending b ↦ 1, a ↦ κ, c ↦ −1.
    let back = |w: f64| {
        let s = 2.0 * (w - kappa) / ((w + 1.0) * (1.0 - kappa));
        (a * (b - c) - s * c * (b - a)) / ((b - c) - s * (b - a))
    };
    let (alphas, betas) = if a == b {
        (vec![a; k], w.iter().map(|_| if c == d { c } else { 0.5 * (c + d) }).collect())
    } else {
        (w.iter().map(|&x| back(x)).collect(), w.iter().map(|&x| back(-x)).collect())
    };
    Ok(ShiftSchedule { alphas, betas, predicted_factor: zolotarev_interval_bound(gamma, k)? })
}

/// Shifts for disks `|z − c1| <= r1` (zeros) and `|z − c2| <= r2` (poles)
/// with real centres: every pair is the common inverse points `(α, β)` of
/// both circles, which attains `ρ^{−k}`.
pub fn adi_shifts_disk(e: (f64, f64), f: (f64, f64), k: usize) -> Result<ShiftSchedule> {
    if k == 0 {
        return Err(Error::InvalidArgument("at least one shift pair is needed".into()));
    }
    let ((c1, r1), (c2, r2)) = (e, f);
    let rho = disk_pair_rho(c1, r1, c2, r2)?;
    // (t − c1)(u − c1) = r1² and (t − c2)(u − c2) = r2² for {t, u} = {α, β}
    let sum = (c2 * c2 - c1 * c1 + r1 * r1 - r2 * r2) / (c2 - c1);
    let prod = r1 * r1 + c1 * sum - c1 * c1;
    let disc = (sum * sum - 4.0 * prod).max(0.0).sqrt();
    let (t, u) = (0.5 * (sum + disc), 0.5 * (sum - disc));
    let (alpha, beta) = if (t - c1).abs() < r1 { (t, u) } else { (u, t) };
    Ok(ShiftSchedule { alphas: vec![alpha; k], betas: vec![beta; k], predicted_factor: rho_power_bound(rho, k) })
}

/// Shifts for a certified separated pair.
pub fn shifts_for_pair(pair: &SeparatedPair, k: usize) -> Result<ShiftSchedule> {
    match (pair.e, pair.f) {
        (Region::Interval { lo: a, hi: b }, Region::Interval { lo: c, hi: d }) => adi_shifts_interval((a, b), (c, d), k),
        (Region::Disk { center: c1, radius: r1 }, Region::Disk { center: c2, radius: r2 }) => {
            adi_shifts_disk((c1, r1), (c2, r2), k)
        }
        _ => Err(Error::InvalidGeometry("mixed interval and disk pair".into())),
    }
}
