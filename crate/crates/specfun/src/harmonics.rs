//! Scalar and vector spherical harmonics.
//!
//! The scalar harmonics are
//!
//!   Y_n^m(theta, phi) = sqrt((2n+1)(n-|m|)! / (4 pi (n+|m|)!)) P_n^|m|(cos theta) e^{im phi}
//!
//! (no Condon-Shortley phase), orthonormal on the unit sphere. On the
//! sphere of radius R the rescaled family X_n^m = Y_n^m / R is orthonormal
//! in L^2, and the tangential fields
//!
//!   U_n^m = grad_Gamma X_n^m / sqrt(n(n+1)),   V_n^m = e_rho x U_n^m
//!
//! (with U_0^0 = V_0^0 = 0) complete an orthonormal basis of L^2 vector
//! fields on the sphere together with X_n^m e_rho.

use crate::legendre::LegendreTable;
use crate::{c64, ModeIndex, SphericalPoint};
use num_complex::Complex64;

/// Polar angles are clipped this far from the poles before evaluating
/// anything that carries a 1/sin(theta) factor.
pub const POLE_CLIP: f64 = 1e-8;

fn clip_theta(theta: f64) -> f64 {
    theta.clamp(POLE_CLIP, std::f64::consts::PI - POLE_CLIP)
}

/// All scalar harmonics and their theta derivatives at one polar angle,
/// shared across the azimuthal evaluations.
#[derive(Debug, Clone)]
pub struct SphHarmonics {
    table: LegendreTable,
    theta: f64,
}

/// The three vector harmonics of one mode at one surface point, in
/// Cartesian components: (U_n^m, V_n^m, X_n^m e_rho).
#[derive(Debug, Clone, Copy)]
pub struct VectorTriple {
    pub u: [Complex64; 3],
    pub v: [Complex64; 3],
    pub x_er: [Complex64; 3],
}

impl SphHarmonics {
    pub fn new(n_max: u32, theta: f64) -> Self {
        let theta = clip_theta(theta);
        Self {
            table: LegendreTable::new(n_max, theta),
            theta,
        }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Y_n^m(theta, phi).
    pub fn y(&self, mode: ModeIndex, phi: f64) -> Complex64 {
        let amp = self.table.p(mode.n, mode.m.unsigned_abs());
        amp * Complex64::from_polar(1.0, mode.m as f64 * phi)
    }

    /// dY_n^m/dtheta at (theta, phi).
    pub fn dy_dtheta(&self, mode: ModeIndex, phi: f64) -> Complex64 {
        let amp = self.table.dp(mode.n, mode.m.unsigned_abs());
        amp * Complex64::from_polar(1.0, mode.m as f64 * phi)
    }

    /// (U_n^m, V_n^m, X_n^m e_rho) at (theta, phi) on the sphere of radius r.
    pub fn vector_triple(&self, mode: ModeIndex, phi: f64, r: f64) -> VectorTriple {
        let pt = SphericalPoint {
            rho: r,
            theta: self.theta,
            phi,
        };
        let (e_rho, e_theta, e_phi) = pt.frame();
        let y = self.y(mode, phi);
        let x_er = scale_real(e_rho, y / r);

        if mode.n == 0 {
            let zero = [c64(0.0, 0.0); 3];
            return VectorTriple {
                u: zero,
                v: zero,
                x_er,
            };
        }

        // Angular gradient of Y: dY/dtheta e_theta + (im Y / sin theta) e_phi.
        let g_theta = self.dy_dtheta(mode, phi);
        let g_phi = c64(0.0, mode.m as f64) * y / self.theta.sin();
        let scale = 1.0 / (r * mode.lambda());

        let mut u = [c64(0.0, 0.0); 3];
        let mut v = [c64(0.0, 0.0); 3];
        for i in 0..3 {
            u[i] = scale * (g_theta * e_theta[i] + g_phi * e_phi[i]);
            // e_rho x e_theta = e_phi, e_rho x e_phi = -e_theta.
            v[i] = scale * (g_theta * e_phi[i] - g_phi * e_theta[i]);
        }
        VectorTriple { u, v, x_er }
    }
}

fn scale_real(e: [f64; 3], c: Complex64) -> [Complex64; 3] {
    [c * e[0], c * e[1], c * e[2]]
}

/// Y_n^m at a single point. Builds a table internally; use [`SphHarmonics`]
/// when evaluating many modes at the same angle.
pub fn sph_harmonic(mode: ModeIndex, theta: f64, phi: f64) -> Complex64 {
    SphHarmonics::new(mode.n, theta).y(mode, phi)
}

/// X_n^m = Y_n^m / R on the sphere of radius R.
pub fn x_harmonic(mode: ModeIndex, theta: f64, phi: f64, r: f64) -> Complex64 {
    sph_harmonic(mode, theta, phi) / r
}

/// (U_n^m, V_n^m, X_n^m e_rho) at a single point.
pub fn vector_harmonics(mode: ModeIndex, theta: f64, phi: f64, r: f64) -> VectorTriple {
    SphHarmonics::new(mode.n, theta).vector_triple(mode, phi, r)
}
