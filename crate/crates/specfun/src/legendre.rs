//! Fully normalized associated Legendre functions.
//!
//! The normalization is chosen so that P̄_n^m(theta) e^{im phi} is an
//! orthonormal spherical harmonic on the unit sphere, with no
//! Condon-Shortley phase (P_m^m = +(2m-1)!! sin^m theta). Normalizing
//! inside the recurrences keeps every intermediate bounded, so no
//! factorials are ever formed.

/// Table of P̄_n^m and dP̄_n^m/dtheta for all 0 <= m <= n <= n_max at a
/// fixed polar angle.
#[derive(Debug, Clone)]
pub struct LegendreTable {
    n_max: u32,
    p: Vec<f64>,
    dp: Vec<f64>,
}

#[inline]
fn idx(n: u32, m: u32) -> usize {
    (n as usize * (n as usize + 1)) / 2 + m as usize
}

impl LegendreTable {
    /// Build the table at polar angle theta (radians). The angle is used
    /// as given; callers are responsible for keeping clear of the poles
    /// when the 1/sin(theta) factors downstream matter.
    pub fn new(n_max: u32, theta: f64) -> Self {
        let len = idx(n_max, n_max) + 1;
        let mut p = vec![0.0; len];
        let mut dp = vec![0.0; len];
        let x = theta.cos();
        let s = theta.sin();

        p[idx(0, 0)] = 0.25 / std::f64::consts::PI;
        p[idx(0, 0)] = p[idx(0, 0)].sqrt();

        // Diagonal: P̄_m^m = P̄_{m-1}^{m-1} sin(theta) sqrt((2m+1)/(2m)).
        for m in 1..=n_max {
            p[idx(m, m)] =
                p[idx(m - 1, m - 1)] * s * ((2.0 * m as f64 + 1.0) / (2.0 * m as f64)).sqrt();
        }
        // First subdiagonal: P̄_{m+1}^m = sqrt(2m+3) cos(theta) P̄_m^m.
        for m in 0..n_max {
            p[idx(m + 1, m)] = (2.0 * m as f64 + 3.0).sqrt() * x * p[idx(m, m)];
        }
        // Remaining rows by the three-term recurrence in n.
        for m in 0..=n_max {
            for n in (m + 2)..=n_max {
                let nf = n as f64;
                let mf = m as f64;
                let a = ((4.0 * nf * nf - 1.0) / (nf * nf - mf * mf)).sqrt();
                let b = (((nf - 1.0) * (nf - 1.0) - mf * mf) / (4.0 * (nf - 1.0) * (nf - 1.0) - 1.0))
                    .sqrt();
                p[idx(n, m)] = a * (x * p[idx(n - 1, m)] - b * p[idx(n - 2, m)]);
            }
        }

        // dP̄_n^m/dtheta = [n cos(theta) P̄_n^m - sqrt((2n+1)(n^2-m^2)/(2n-1)) P̄_{n-1}^m] / sin(theta).
        for n in 1..=n_max {
            for m in 0..=n {
                let nf = n as f64;
                let mf = m as f64;
                let c = ((2.0 * nf + 1.0) * (nf * nf - mf * mf) / (2.0 * nf - 1.0)).sqrt();
                let below = if m < n { p[idx(n - 1, m)] } else { 0.0 };
                dp[idx(n, m)] = (nf * x * p[idx(n, m)] - c * below) / s;
            }
        }

        Self { n_max, p, dp }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    /// P̄_n^m(theta), m >= 0.
    pub fn p(&self, n: u32, m: u32) -> f64 {
        self.p[idx(n, m)]
    }

    /// dP̄_n^m/dtheta, m >= 0.
    pub fn dp(&self, n: u32, m: u32) -> f64 {
        self.dp[idx(n, m)]
    }
}
