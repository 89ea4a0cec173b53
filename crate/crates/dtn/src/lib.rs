//! Per-mode machinery for the transparent boundary condition of rigid
//! elastic scattering on a sphere.
//!
//! A time-harmonic displacement field outside a bounded obstacle splits into
//! compressional and shear potentials, and on a sphere of radius `R` each
//! vector spherical harmonic mode `(n, m)` evolves independently. This crate
//! provides the per-mode objects that the rest of the workspace consumes:
//!
//! * [`lambda_n`], the scalar denominator whose nonvanishing makes the
//!   potential-to-field map invertible;
//! * [`kn_matrix`] / [`kn_inverse`], the 3x3 map between potential
//!   coefficients and displacement coefficients on the sphere;
//! * [`dtn_mode_matrix`], the Dirichlet-to-Neumann matrix `M_n` coupling the
//!   displacement trace to the traction trace mode by mode;
//! * [`propagation_matrix`], the matrix `Q_n` carrying outgoing-field
//!   coefficients from an inner sphere to an outer one;
//! * [`potential_dtn_symbols`], the diagonal DtN symbols for the scalar and
//!   Maxwell potential problems;
//! * [`truncation_error`] / [`select_truncation`], the truncation-error model
//!   for the boundary-condition mode sum and the order selector built on it;
//! * [`DtnCache`], a thread-safe memo for the per-mode matrices.
//!
//! Everything is evaluated through ratio recurrences for the spherical
//! Hankel functions, so degrees in the hundreds are fine even where the
//! function values themselves overflow.

use num_complex::Complex64;
use thiserror::Error;

mod cache;
mod matrices;
mod symbols;
mod truncation;

pub use cache::DtnCache;
pub use matrices::{
    dtn_mode_matrix, kn_inverse, kn_matrix, lambda_n, mhat_definiteness, mhat_matrix,
    propagation_matrix, ModeMatrix,
};
pub use symbols::{potential_dtn_symbols, PotentialSymbols};
pub use truncation::{peak_order, select_truncation, truncation_error, MAX_TRUNCATION_ORDER};

/// Errors for parameter validation and truncation-order selection.
#[derive(Debug, Error)]
pub enum DtnError {
    /// Material or frequency parameters violate their admissibility range.
    #[error("invalid elastic parameters: {detail}")]
    InvalidParams { detail: String },
    /// Sphere radii are not ordered as 0 < inner < outer.
    #[error("invalid spherical geometry: {detail}")]
    InvalidGeometry { detail: String },
    /// No admissible truncation order meets the requested tolerance.
    #[error(
        "truncation order would exceed {max} (tolerance {tol:e} still unmet at order {reached}); \
         enlarge the gap between the obstacle sphere and the truncation sphere"
    )]
    TruncationCapacity { tol: f64, reached: u32, max: u32 },
}

/// Lame constants and angular frequency, with the derived wavenumbers.
///
/// Admissibility requires `mu > 0`, `lambda + mu > 0`, and `omega > 0`,
/// which makes the compressional wavenumber strictly smaller than the shear
/// wavenumber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticParams {
    lambda: f64,
    mu: f64,
    omega: f64,
    kappa_p: f64,
    kappa_s: f64,
}

impl ElasticParams {
    pub fn new(lambda: f64, mu: f64, omega: f64) -> Result<Self, DtnError> {
        let bad = |detail: String| DtnError::InvalidParams { detail };
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(bad(format!("mu = {mu} must be positive and finite")));
        }
        if !(lambda + mu > 0.0) || !lambda.is_finite() {
            return Err(bad(format!(
                "lambda + mu = {} must be positive (lambda = {lambda}, mu = {mu})",
                lambda + mu
            )));
        }
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(bad(format!("omega = {omega} must be positive and finite")));
        }
        Ok(Self {
            lambda,
            mu,
            omega,
            kappa_p: omega / (lambda + 2.0 * mu).sqrt(),
            kappa_s: omega / mu.sqrt(),
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// Compressional wavenumber `omega / sqrt(lambda + 2 mu)`.
    pub fn kappa_p(&self) -> f64 {
        self.kappa_p
    }

    /// Shear wavenumber `omega / sqrt(mu)`.
    pub fn kappa_s(&self) -> f64 {
        self.kappa_s
    }
}

/// The two concentric spheres of the truncated exterior problem: the
/// obstacle fits strictly inside the inner sphere of radius `r_inner`, and
/// the artificial boundary is the outer sphere of radius `r_outer`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalGeometry {
    r_inner: f64,
    r_outer: f64,
}

impl SphericalGeometry {
    pub fn new(r_inner: f64, r_outer: f64) -> Result<Self, DtnError> {
        if !(r_inner > 0.0 && r_outer > r_inner) || !r_outer.is_finite() {
            return Err(DtnError::InvalidGeometry {
                detail: format!("need 0 < inner < outer, got inner = {r_inner}, outer = {r_outer}"),
            });
        }
        Ok(Self { r_inner, r_outer })
    }

    pub fn r_inner(&self) -> f64 {
        self.r_inner
    }

    pub fn r_outer(&self) -> f64 {
        self.r_outer
    }

    /// The contraction factor `r_inner / r_outer` in `(0, 1)` that drives
    /// the exponential decay of the truncation error.
    pub fn ratio(&self) -> f64 {
        self.r_inner / self.r_outer
    }
}

pub(crate) fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
