//! Special functions for elastic wave scattering on spherical geometries.
//!
//! Provides spherical Bessel and Hankel functions with stable recurrence
//! evaluation, fully normalized associated Legendre functions, scalar and
//! vector spherical harmonics, and numerical verification of the vector
//! calculus identities and asymptotic Bessel bounds the rest of the
//! workspace relies on.
//!
//! All operations are pure functions of their inputs and safe to call from
//! any number of threads.

pub mod bessel;
pub mod harmonics;
pub mod identities;
pub mod legendre;
pub mod lemmas;
pub mod quad;

pub use bessel::{
    hankel_arg_ratio, log_deriv, sph_bessel, sph_hankel, y_arg_ratio, y_ratio_prev, HankelKind,
    SphBessel,
};
pub use harmonics::{sph_harmonic, vector_harmonics, x_harmonic, SphHarmonics, VectorTriple};
pub use identities::{verify_vector_identities, IdentityReport, RadialProfile};
pub use lemmas::{verify_bessel_lemmas, LemmaCheck, LemmaReport};

use num_complex::Complex64;

/// Errors from special function evaluation.
#[derive(Debug, thiserror::Error)]
pub enum SpecFunError {
    /// Argument outside the function's domain.
    #[error("domain error in {what}: {detail}")]
    Domain { what: &'static str, detail: String },
    /// Result magnitude exceeds f64 range for the given degree/argument combination.
    #[error("range error in {what}: n = {n}, x = {x:e} overflows f64")]
    Range { what: &'static str, n: u32, x: f64 },
    /// Internal invariant violated (should not happen for valid inputs).
    #[error("internal error in {what}: {detail}")]
    Internal { what: &'static str, detail: String },
}

/// Spherical harmonic mode index (degree n, order m with |m| <= n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModeIndex {
    pub n: u32,
    pub m: i32,
}

impl ModeIndex {
    /// Create a mode index, checking |m| <= n.
    pub fn new(n: u32, m: i32) -> Result<Self, SpecFunError> {
        if m.unsigned_abs() > n {
            return Err(SpecFunError::Domain {
                what: "ModeIndex",
                detail: format!("|m| = {} exceeds n = {}", m.unsigned_abs(), n),
            });
        }
        Ok(Self { n, m })
    }

    /// Half-integer Bessel order nu = n + 1/2 used in the asymptotic lemma checks.
    pub fn nu(&self) -> f64 {
        self.n as f64 + 0.5
    }

    /// sqrt(n(n+1)), the tangential-gradient normalization for this degree.
    pub fn lambda(&self) -> f64 {
        let n = self.n as f64;
        (n * (n + 1.0)).sqrt()
    }
}

/// Point in spherical coordinates (rho > 0, theta in [0, pi], phi in [0, 2pi)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalPoint {
    pub rho: f64,
    pub theta: f64,
    pub phi: f64,
}

impl SphericalPoint {
    pub fn new(rho: f64, theta: f64, phi: f64) -> Result<Self, SpecFunError> {
        if !(rho > 0.0) || !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(SpecFunError::Domain {
                what: "SphericalPoint",
                detail: format!("rho = {rho}, theta = {theta} out of range"),
            });
        }
        Ok(Self { rho, theta, phi })
    }

    /// Convert from Cartesian coordinates. The origin maps to rho = 0 and is rejected.
    pub fn from_cartesian(x: [f64; 3]) -> Result<Self, SpecFunError> {
        let rho = (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]).sqrt();
        if !(rho > 0.0) {
            return Err(SpecFunError::Domain {
                what: "SphericalPoint::from_cartesian",
                detail: "point at origin has no angular coordinates".into(),
            });
        }
        let theta = (x[2] / rho).clamp(-1.0, 1.0).acos();
        let mut phi = x[1].atan2(x[0]);
        if phi < 0.0 {
            phi += 2.0 * std::f64::consts::PI;
        }
        Ok(Self { rho, theta, phi })
    }

    pub fn to_cartesian(&self) -> [f64; 3] {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let (sp, cp) = (self.phi.sin(), self.phi.cos());
        [self.rho * st * cp, self.rho * st * sp, self.rho * ct]
    }

    /// Local orthonormal frame (e_rho, e_theta, e_phi) in Cartesian components.
    pub fn frame(&self) -> ([f64; 3], [f64; 3], [f64; 3]) {
        let (st, ct) = (self.theta.sin(), self.theta.cos());
        let (sp, cp) = (self.phi.sin(), self.phi.cos());
        (
            [st * cp, st * sp, ct],
            [ct * cp, ct * sp, -st],
            [-sp, cp, 0.0],
        )
    }
}

/// Shorthand complex constructor used throughout the crate.
#[inline]
pub fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
