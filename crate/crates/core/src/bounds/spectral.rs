//! Spectral enclosures and the Minkowski separation conditions.

use crate::{Error, Result};

/// Where the eigenvalues of one coefficient matrix live: a real interval
/// `[lo, hi]` or a disk `|z - center| <= radius` with `0 < radius < center`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpectralSet {
    Interval { lo: f64, hi: f64 },
    Disk { center: f64, radius: f64 },
}

impl SpectralSet {
    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo > hi {
            return Err(Error::InvalidGeometry(format!("[{lo}, {hi}] is not an interval")));
        }
        Ok(SpectralSet::Interval { lo, hi })
    }

    pub fn disk(center: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius < center && center.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "disk needs 0 < radius < center, got center {center}, radius {radius}"
            )));
        }
        Ok(SpectralSet::Disk { center, radius })
    }

    fn region(&self) -> Region {
        match *self {
            SpectralSet::Interval { lo, hi } => Region::Interval { lo, hi },
            SpectralSet::Disk { center, radius } => Region::Disk { center, radius },
        }
    }

    fn is_interval(&self) -> bool {
        matches!(self, SpectralSet::Interval { .. })
    }
}

/// A real interval or a disk centred on the real axis, of either sign.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Region {
    Interval { lo: f64, hi: f64 },
    Disk { center: f64, radius: f64 },
}

impl Region {
    /// Minkowski sum.
    pub fn plus(&self, other: &Region) -> Region {
        match (*self, *other) {
            (Region::Interval { lo: a, hi: b }, Region::Interval { lo: c, hi: d }) => {
                Region::Interval { lo: a + c, hi: b + d }
            }
            (Region::Disk { center: a, radius: r }, Region::Disk { center: b, radius: s }) => {
                Region::Disk { center: a + b, radius: r + s }
            }
            _ => unreachable!("mixed geometries are rejected before summation"),
        }
    }

    pub fn negated(&self) -> Region {
        match *self {
            Region::Interval { lo, hi } => Region::Interval { lo: -hi, hi: -lo },
            Region::Disk { center, radius } => Region::Disk { center: -center, radius },
        }
    }

    pub fn contains(&self, z: f64) -> bool {
        match *self {
            Region::Interval { lo, hi } => lo <= z && z <= hi,
            Region::Disk { center, radius } => (z - center).abs() <= radius,
        }
    }
}

/// A disjoint pair `(E, F)`: zeros of the rational function live on `E`,
/// poles on `F`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeparatedPair {
    pub e: Region,
    pub f: Region,
}

/// Geometry-dependent conditioning of a separated pair.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Conditioning {
    /// Interval pair: the cross ratio `γ`.
    Gamma(f64),
    /// Disk pair: the annulus modulus `ρ > 1`.
    Rho(f64),
}

impl Conditioning {
    pub fn value(&self) -> f64 {
        match *self {
            Conditioning::Gamma(v) | Conditioning::Rho(v) => v,
        }
    }
}

impl SeparatedPair {
    pub fn conditioning(&self) -> Result<Conditioning> {
        match (self.e, self.f) {
            (Region::Interval { lo: a, hi: b }, Region::Interval { lo: c, hi: d }) => {
                Ok(Conditioning::Gamma(interval_cross_ratio(a, b, c, d)?))
            }
            (Region::Disk { center: c1, radius: r1 }, Region::Disk { center: c2, radius: r2 }) => {
                Ok(Conditioning::Rho(super::zolotarev::disk_pair_rho(c1, r1, c2, r2)?))
            }
            _ => Err(Error::InvalidGeometry("mixed interval and disk pair".into())),
        }
    }

    /// Smallest `k` whose Zolotarev bound is at most `tol`.
    pub fn k_for_tolerance(&self, tol: f64) -> Result<usize> {
        match self.conditioning()? {
            Conditioning::Gamma(g) => super::zolotarev::k_for_epsilon_interval(g, tol),
            Conditioning::Rho(r) => super::zolotarev::k_for_epsilon_disk(r, tol),
        }
    }

    /// Upper bound on `Z_k(E, F)`.
    pub fn zolotarev_bound(&self, k: usize) -> Result<f64> {
        match self.conditioning()? {
            Conditioning::Gamma(g) => super::zolotarev::zolotarev_interval_bound(g, k),
            Conditioning::Rho(r) => Ok(super::zolotarev::rho_power_bound(r, k)),
        }
    }
}

/// Cross ratio `|(c−a)(d−b) / ((c−b)(d−a))|` of disjoint intervals
/// `[a, b]` and `[c, d]`; at least 1, invariant under affine maps.
pub fn interval_cross_ratio(a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
    if a > b || c > d {
        return Err(Error::InvalidGeometry("interval endpoints out of order".into()));
    }
    if !(b < c || d < a) {
        return Err(Error::InvalidGeometry(format!("[{a}, {b}] and [{c}, {d}] overlap")));
    }
    Ok(((c - a) * (d - b) / ((c - b) * (d - a))).abs())
}

fn disjoint(e: &Region, f: &Region) -> bool {
    match (*e, *f) {
        (Region::Interval { lo: a, hi: b }, Region::Interval { lo: c, hi: d }) => b < c || d < a,
        (Region::Disk { center: c1, radius: r1 }, Region::Disk { center: c2, radius: r2 }) => {
            (c1 - c2).abs() > r1 + r2
        }
        _ => false,
    }
}

fn check_uniform(sets: &[SpectralSet]) -> Result<()> {
    if sets.len() < 2 {
        return Err(Error::InvalidArgument("separation needs at least two spectral sets".into()));
    }
    let first = sets[0].is_interval();
    if sets.iter().any(|s| s.is_interval() != first) {
        return Err(Error::InvalidGeometry("mixed interval and disk spectra are not supported".into()));
    }
    Ok(())
}

/// Minkowski sum separation: for each split `j = 1..d-1`,
/// `E_j = Λ_1 + ... + Λ_j` and `F_j = −(Λ_{j+1} + ... + Λ_d)` must be
/// disjoint. Returns the `d − 1` pairs or the first violated split.
pub fn check_minkowski_sum_separated(sets: &[SpectralSet]) -> Result<Vec<SeparatedPair>> {
    check_uniform(sets)?;
    let d = sets.len();
    let mut pairs = Vec::with_capacity(d - 1);
    for j in 1..d {
        let e = sets[1..j].iter().fold(sets[0].region(), |acc, s| acc.plus(&s.region()));
        let rest = sets[j + 1..].iter().fold(sets[j].region(), |acc, s| acc.plus(&s.region()));
        let pair = SeparatedPair { e, f: rest.negated() };
        if !disjoint(&pair.e, &pair.f) {
            return Err(Error::SeparationViolation { split: j });
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

/// Singly separated: for each mode `j`, `E_j = Λ_j` and
/// `F_j = −Σ_{i≠j} Λ_i` must be disjoint. Returns `d` pairs; a violation
/// reports the one-based mode.
pub fn check_minkowski_singly_separated(sets: &[SpectralSet]) -> Result<Vec<SeparatedPair>> {
    check_uniform(sets)?;
    let d = sets.len();
    let mut pairs = Vec::with_capacity(d);
    for j in 0..d {
        let rest = (0..d)
            .filter(|&i| i != j)
            .map(|i| sets[i].region())
            .reduce(|acc, r| acc.plus(&r))
            .expect("at least two sets");
        let pair = SeparatedPair { e: sets[j].region(), f: rest.negated() };
        if !disjoint(&pair.e, &pair.f) {
            return Err(Error::SeparationViolation { split: j + 1 });
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fd_poisson_intervals_are_separated() {
        let n = 10.0f64;
        let set = SpectralSet::interval(1.0, n * n).unwrap();
        let pairs = check_minkowski_sum_separated(&[set; 3]).unwrap();
        assert_eq!(pairs.len(), 2);
        assert_eq!(pairs[0].e, Region::Interval { lo: 1.0, hi: 100.0 });
        assert_eq!(pairs[0].f, Region::Interval { lo: -200.0, hi: -2.0 });
    }

    #[test]
    fn straddling_zero_is_rejected_everywhere() {
        let set = SpectralSet::interval(-1.0, 1.0).unwrap();
        assert!(matches!(check_minkowski_sum_separated(&[set; 3]), Err(Error::SeparationViolation { split: 1 })));
        let mixed = [SpectralSet::interval(1.0, 2.0).unwrap(), set, set];
        // split 1: E=[1,2], F=[-2,2] overlap
        assert!(matches!(check_minkowski_sum_separated(&mixed), Err(Error::SeparationViolation { split: 1 })));
        assert!(check_minkowski_singly_separated(&[set; 3]).is_err());
    }

    #[test]
    fn disk_example() {
        let set = SpectralSet::disk(2.0, 1.0).unwrap();
        let pairs = check_minkowski_sum_separated(&[set; 3]).unwrap();
        assert_eq!(pairs[0].e, Region::Disk { center: 2.0, radius: 1.0 });
        assert_eq!(pairs[0].f, Region::Disk { center: -4.0, radius: 2.0 });
        assert!(SpectralSet::disk(1.0, 1.0).is_err());
        assert!(SpectralSet::disk(1.0, 0.0).is_err());
    }

    #[test]
    fn mixed_geometry_rejected() {
        let sets = [SpectralSet::interval(1.0, 2.0).unwrap(), SpectralSet::disk(2.0, 1.0).unwrap()];
        assert!(matches!(check_minkowski_sum_separated(&sets), Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn cross_ratio_properties() {
        let g = interval_cross_ratio(1.0, 9.0, -9.0, -1.0).unwrap();
        assert!((g - 100.0 / 36.0).abs() < 1e-14);
        // affine invariance
        let h = interval_cross_ratio(3.0, 19.0, -17.0, -1.0).unwrap();
        assert!((g - h).abs() < 1e-13);
        assert!(interval_cross_ratio(1.0, 2.0, 1.5, 3.0).is_err());
        // orientation does not matter
        assert!((interval_cross_ratio(-9.0, -1.0, 1.0, 9.0).unwrap() - g).abs() < 1e-14);
    }
}
