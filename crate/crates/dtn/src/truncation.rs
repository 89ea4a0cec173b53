//! Truncation-error model for the boundary-condition mode sum.
//!
//! Cutting the DtN series at degree `N` perturbs the solution by at most a
//! constant times `N (R'/R)^N` times the incident-field strength, where `R'`
//! and `R` are the inner and outer sphere radii. The model function rises to
//! a peak near `1 / ln(R/R')` before the exponential decay takes over, so
//! the order selector only trusts the region at and beyond the peak.

use crate::{DtnError, SphericalGeometry};

/// Hard ceiling on the selected truncation order. Each degree adds `2n + 1`
/// modes and three dense boundary columns per mode, so orders beyond this
/// point say the sphere gap is too thin for the method, not that more
/// computation is warranted.
pub const MAX_TRUNCATION_ORDER: u32 = 512;

/// The truncation-error model `epsilon_N = N (R'/R)^N * uinc_norm`.
pub fn truncation_error(geometry: &SphericalGeometry, n: u32, uinc_norm: f64) -> f64 {
    n as f64 * geometry.ratio().powi(n as i32) * uinc_norm
}

/// First degree at or past the real maximizer of `N (R'/R)^N`; the model is
/// strictly decreasing from here on.
pub fn peak_order(geometry: &SphericalGeometry) -> u32 {
    let n_c = 1.0 / (1.0 / geometry.ratio()).ln();
    (n_c.ceil() as u32).max(1)
}

/// Smallest truncation order whose modeled error, and that of every higher
/// order, stays within `tol`.
///
/// Because the model rises before its peak, "first order under tolerance"
/// alone would accept spurious pre-peak dips; the selector instead compares
/// the peak value against the tolerance and otherwise walks down the
/// post-peak tail.
pub fn select_truncation(
    geometry: &SphericalGeometry,
    uinc_norm: f64,
    tol: f64,
) -> Result<u32, DtnError> {
    assert!(tol > 0.0, "tolerance must be positive, got {tol}");
    assert!(
        uinc_norm > 0.0,
        "incident-field norm must be positive, got {uinc_norm}"
    );
    let peak = peak_order(geometry);
    let peak_value = (peak.saturating_sub(1).max(1)..=peak)
        .map(|n| truncation_error(geometry, n, uinc_norm))
        .fold(0.0, f64::max);
    if peak_value <= tol {
        return Ok(1);
    }
    for n in peak..=MAX_TRUNCATION_ORDER {
        if truncation_error(geometry, n, uinc_norm) <= tol {
            return Ok(n);
        }
    }
    Err(DtnError::TruncationCapacity {
        tol,
        reached: MAX_TRUNCATION_ORDER,
        max: MAX_TRUNCATION_ORDER,
    })
}
