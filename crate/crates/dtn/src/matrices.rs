//! The per-mode 3x3 matrices of the spherical DtN calculus.
//!
//! Coefficient vectors are ordered `(U, V, X e_rho)`: first the two
//! tangential vector-harmonic channels, then the radial one. Degree 0 has no
//! tangential channels, so matrices that involve dividing by `sqrt(n(n+1))`
//! require `n >= 1`.

use num_complex::Complex64;
use specfun::{hankel_arg_ratio, log_deriv, HankelKind};

use crate::{c64, ElasticParams, SphericalGeometry};

/// A dense 3x3 complex matrix tagged with its mode degree.
///
/// Indexing is zero-based: `m[(0, 2)]` is the coupling from the radial
/// channel into the first tangential channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeMatrix {
    n: u32,
    e: [[Complex64; 3]; 3],
}

impl ModeMatrix {
    pub fn from_rows(n: u32, rows: [[Complex64; 3]; 3]) -> Self {
        Self { n, e: rows }
    }

    pub fn zeros(n: u32) -> Self {
        Self::from_rows(n, [[Complex64::ZERO; 3]; 3])
    }

    pub fn identity(n: u32) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..3 {
            m.e[i][i] = Complex64::ONE;
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn mul(&self, rhs: &ModeMatrix) -> ModeMatrix {
        let mut out = ModeMatrix::zeros(self.n);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = Complex64::ZERO;
                for k in 0..3 {
                    acc += self.e[i][k] * rhs.e[k][j];
                }
                out.e[i][j] = acc;
            }
        }
        out
    }

    pub fn apply(&self, x: [Complex64; 3]) -> [Complex64; 3] {
        let mut out = [Complex64::ZERO; 3];
        for i in 0..3 {
            out[i] = self.e[i][0] * x[0] + self.e[i][1] * x[1] + self.e[i][2] * x[2];
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> ModeMatrix {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for v in row.iter_mut() {
                *v *= s;
            }
        }
        out
    }

    pub fn add(&self, rhs: &ModeMatrix) -> ModeMatrix {
        let mut out = *self;
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] += rhs.e[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &ModeMatrix) -> ModeMatrix {
        let mut out = *self;
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] -= rhs.e[i][j];
            }
        }
        out
    }

    pub fn adjoint(&self) -> ModeMatrix {
        let mut out = ModeMatrix::zeros(self.n);
        for i in 0..3 {
            for j in 0..3 {
                out.e[i][j] = self.e[j][i].conj();
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest entry magnitude, the norm used for the decay estimates.
    pub fn max_abs(&self) -> f64 {
        self.e
            .iter()
            .flatten()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for ModeMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.e[i][j]
    }
}

/// Logarithmic derivative of the outgoing spherical Hankel function,
/// infallible for the positive arguments this crate produces.
fn zln(n: u32, t: f64) -> Complex64 {
    log_deriv(HankelKind::First, n, t)
        .expect("Hankel log-derivative recurrence is well defined for positive arguments")
}

fn lam(n: u32) -> f64 {
    (n as f64 * (n as f64 + 1.0)).sqrt()
}

/// The invertibility denominator
/// `Lambda_n = z_n(kappa_p R) (1 + z_n(kappa_s R)) - n(n+1)`,
/// where `z_n` is the outgoing Hankel logarithmic derivative. Its imaginary
/// part is strictly negative, which keeps every mode matrix well defined.
pub fn lambda_n(params: &ElasticParams, r: f64, n: u32) -> Complex64 {
    let zp = zln(n, params.kappa_p() * r);
    let zs = zln(n, params.kappa_s() * r);
    zp * (Complex64::ONE + zs) - c64(n as f64 * (n as f64 + 1.0), 0.0)
}

/// The map from potential coefficients `(phi, psi_2, psi_3)` to displacement
/// coefficients `(u_U, u_V, u_X)` on the sphere of radius `r`.
///
/// Requires `n >= 1`; at degree 0 only the radial channel exists.
pub fn kn_matrix(params: &ElasticParams, r: f64, n: u32) -> ModeMatrix {
    assert!(n >= 1, "potential map needs n >= 1, got n = {n}");
    let s = lam(n);
    let zp = zln(n, params.kappa_p() * r);
    let zs = zln(n, params.kappa_s() * r);
    let ks2r2 = (params.kappa_s() * r).powi(2);
    let inv_r = 1.0 / r;
    ModeMatrix::from_rows(
        n,
        [
            [
                c64(s * inv_r, 0.0),
                -(Complex64::ONE + zs) * inv_r,
                Complex64::ZERO,
            ],
            [
                Complex64::ZERO,
                Complex64::ZERO,
                c64(-ks2r2 / s * inv_r, 0.0),
            ],
            [zp * inv_r, c64(-s * inv_r, 0.0), Complex64::ZERO],
        ],
    )
}

/// Closed-form inverse of [`kn_matrix`]. Requires `n >= 1`.
pub fn kn_inverse(params: &ElasticParams, r: f64, n: u32) -> ModeMatrix {
    assert!(n >= 1, "potential map needs n >= 1, got n = {n}");
    let s = lam(n);
    let zp = zln(n, params.kappa_p() * r);
    let zs = zln(n, params.kappa_s() * r);
    let ks2r2 = (params.kappa_s() * r).powi(2);
    let lambda = lambda_n(params, r, n);
    let pre = c64(r, 0.0) / lambda;
    ModeMatrix::from_rows(
        n,
        [
            [
                pre * c64(-s, 0.0),
                Complex64::ZERO,
                pre * (Complex64::ONE + zs),
            ],
            [pre * (-zp), Complex64::ZERO, pre * c64(s, 0.0)],
            [
                Complex64::ZERO,
                // The Lambda factors cancel in this entry; keep the
                // cancellation explicit rather than multiplying it back in.
                c64(-s * r / ks2r2, 0.0),
                Complex64::ZERO,
            ],
        ],
    )
}

/// The DtN matrix `M_n` taking displacement coefficients on the sphere of
/// radius `r` to traction coefficients of the radiating extension.
///
/// The `(U, V)` and `(V, X)` couplings vanish identically; only five entries
/// are nonzero (four at degree 0, where the off-diagonal couplings carry a
/// factor `sqrt(n(n+1))`).
pub fn dtn_mode_matrix(params: &ElasticParams, r: f64, n: u32) -> ModeMatrix {
    let s = lam(n);
    let mu = params.mu();
    let zp = zln(n, params.kappa_p() * r);
    let zs = zln(n, params.kappa_s() * r);
    let ks2r2 = (params.kappa_s() * r).powi(2);
    let w2r2_mu = (params.omega() * r).powi(2) / mu;
    let lambda = lambda_n(params, r, n);
    let mu_r = mu / r;

    let m11 = -(Complex64::ONE + zp * ks2r2 / lambda) * mu_r;
    let m13 = (Complex64::ONE + c64(ks2r2, 0.0) / lambda) * (s * mu_r);
    let m22 = zs * mu_r;
    let m31 = (Complex64::ONE + c64(w2r2_mu, 0.0) / lambda) * (s * mu_r);
    let m33 = -(c64(2.0, 0.0) + (Complex64::ONE + zs) * w2r2_mu / lambda) * mu_r;

    ModeMatrix::from_rows(
        n,
        [
            [m11, Complex64::ZERO, m13],
            [Complex64::ZERO, m22, Complex64::ZERO],
            [m31, Complex64::ZERO, m33],
        ],
    )
}

/// The symmetrized negative real part `-(M_n + M_n^*)/2` of the DtN matrix,
/// a Hermitian matrix that becomes positive definite once the degree passes
/// the propagating-mode band.
pub fn mhat_matrix(params: &ElasticParams, r: f64, n: u32) -> ModeMatrix {
    let m = dtn_mode_matrix(params, r, n);
    m.add(&m.adjoint()).scale(c64(-0.5, 0.0))
}

/// Smallest eigenvalue of [`mhat_matrix`], in closed form.
///
/// The Hermitian matrix decouples into the middle channel and a 2x2 block on
/// the outer channels, so the spectrum is available without iteration.
pub fn mhat_definiteness(params: &ElasticParams, r: f64, n: u32) -> f64 {
    let mh = mhat_matrix(params, r, n);
    let a = mh[(0, 0)].re;
    let c = mh[(2, 2)].re;
    let b2 = mh[(0, 2)].norm_sqr();
    let mid = mh[(1, 1)].re;
    let half_gap = 0.5 * (a - c);
    let low = 0.5 * (a + c) - (half_gap * half_gap + b2).sqrt();
    low.min(mid)
}

/// The propagation matrix `Q_n` carrying the coefficients of an outgoing
/// field from the inner sphere to the outer sphere:
/// `u_n^m(R) = Q_n u_n^m(R')`. Requires `n >= 1`.
pub fn propagation_matrix(
    params: &ElasticParams,
    geometry: &SphericalGeometry,
    n: u32,
) -> ModeMatrix {
    assert!(n >= 1, "propagation matrix needs n >= 1, got n = {n}");
    let (r_in, r_out) = (geometry.r_inner(), geometry.r_outer());
    let (kp, ks) = (params.kappa_p(), params.kappa_s());
    let nn = n as f64 * (n as f64 + 1.0);
    let s = nn.sqrt();

    let zp_out = zln(n, kp * r_out);
    let zp_in = zln(n, kp * r_in);
    let zs_out = zln(n, ks * r_out);
    let zs_in = zln(n, ks * r_in);
    let ratio = |k: f64| {
        hankel_arg_ratio(HankelKind::First, n, k * r_out, k * r_in)
            .expect("Hankel two-argument ratio is well defined for positive arguments")
    };
    let hp = ratio(kp);
    let hs = ratio(ks);
    let pre = c64(r_in / r_out, 0.0) / lambda_n(params, r_in, n);

    let one = Complex64::ONE;
    let q11 = pre * (-c64(nn, 0.0) * hp + zp_in * (one + zs_out) * hs);
    let q13 = pre * s * ((one + zs_in) * hp - (one + zs_out) * hs);
    let q31 = pre * s * (-zp_out * hp + zp_in * hs);
    let q33 = pre * ((one + zs_in) * zp_out * hp - c64(nn, 0.0) * hs);

    ModeMatrix::from_rows(
        n,
        [
            [q11, Complex64::ZERO, q13],
            [Complex64::ZERO, hs, Complex64::ZERO],
            [q31, Complex64::ZERO, q33],
        ],
    )
}
