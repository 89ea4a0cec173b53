//! Diagonal DtN symbols for the scattering potentials.
//!
//! The compressional potential solves a scalar Helmholtz problem and the
//! shear potential a Maxwell-type problem; on the sphere both have diagonal
//! DtN operators in the spherical-harmonic basis. These symbols drive the
//! dual problems of the a posteriori analysis; the displacement-level DtN
//! matrix lives in [`crate::dtn_mode_matrix`].

use num_complex::Complex64;
use specfun::{log_deriv, HankelKind};

use crate::{c64, ElasticParams};

/// Per-mode DtN symbols of the potential problems on the sphere of the
/// given radius.
///
/// `scalar` multiplies the mode of the compressional potential (the radial
/// derivative picks up `scalar / R`). `maxwell_u` and `maxwell_v` multiply
/// the two tangential channels of the shear potential; they are exact
/// reciprocals of each other.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSymbols {
    pub scalar: Complex64,
    pub maxwell_u: Complex64,
    pub maxwell_v: Complex64,
}

impl PotentialSymbols {
    /// Symbols of the adjoint operators, the entrywise conjugates.
    pub fn adjoint(&self) -> Self {
        Self {
            scalar: self.scalar.conj(),
            maxwell_u: self.maxwell_u.conj(),
            maxwell_v: self.maxwell_v.conj(),
        }
    }
}

/// DtN symbols at degree `n` on the sphere of radius `r`.
///
/// The scalar symbol is meaningful for every `n >= 0`. The Maxwell pair
/// belongs to the tangential channels, which vanish at degree 0; the pair is
/// still well defined there (both entries equal 1) but carries no data.
pub fn potential_dtn_symbols(params: &ElasticParams, r: f64, n: u32) -> PotentialSymbols {
    let zp = log_deriv(HankelKind::First, n, params.kappa_p() * r)
        .expect("Hankel log-derivative recurrence is well defined for positive arguments");
    let zs = log_deriv(HankelKind::First, n, params.kappa_s() * r)
        .expect("Hankel log-derivative recurrence is well defined for positive arguments");
    let iksr = c64(0.0, params.kappa_s() * r);
    let one_zs = Complex64::ONE + zs;
    PotentialSymbols {
        scalar: zp,
        maxwell_u: iksr / one_zs,
        maxwell_v: one_zs / iksr,
    }
}
