//! Eigenvalues of symmetric tridiagonal matrices by Sturm-sequence bisection.

/// Number of eigenvalues strictly below `x`.
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = 1.0f64;
    for i in 0..diag.len() {
        let coupling = if i == 0 { 0.0 } else { off[i - 1] * off[i - 1] / q };
        q = diag[i] - x - coupling;
        if q == 0.0 {
            q = -f64::EPSILON * (diag[i].abs() + x.abs()).max(f64::MIN_POSITIVE);
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (lo, hi)
}

/// The `k`-th smallest eigenvalue (zero-based).
pub fn kth_eigenvalue(diag: &[f64], off: &[f64], k: usize) -> f64 {
    assert!(k < diag.len());
    assert_eq!(off.len() + 1, diag.len());
    let (mut lo, mut hi) = gershgorin(diag, off);
    let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
    for _ in 0..200 {
        if hi - lo <= 4.0 * f64::EPSILON * scale {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if sturm_count(diag, off, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All eigenvalues in ascending order.
pub fn symmetric_tridiagonal_eigenvalues(diag: &[f64], off: &[f64]) -> Vec<f64> {
    (0..diag.len()).map(|k| kth_eigenvalue(diag, off, k)).collect()
}

/// Smallest and largest eigenvalue.
pub fn extreme_eigenvalues(diag: &[f64], off: &[f64]) -> (f64, f64) {
    (kth_eigenvalue(diag, off, 0), kth_eigenvalue(diag, off, diag.len() - 1))
}
