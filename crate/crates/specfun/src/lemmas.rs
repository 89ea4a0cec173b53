//! Numerical verification of the asymptotic Bessel bounds.
//!
//! The bounds hold "for sufficiently large" order; none of them comes with
//! an explicit threshold. Each check therefore reports the empirical onset:
//! the smallest degree from which the inequality holds through the top of
//! the tested range. Downstream tests freeze those onsets.
//!
//! Half-integer cylinder orders nu = n + 1/2 are evaluated through the
//! spherical functions, using Y_{n+1/2}(z) = sqrt(2z/pi) y_n(z).

use crate::bessel::{hankel_arg_ratio, y_arg_ratio, y_ratio_prev, HankelKind};

/// Result of one lemma scan.
#[derive(Debug, Clone)]
pub struct LemmaCheck {
    pub name: String,
    /// Smallest n from which the bound holds for every tested n up to max_n,
    /// or None if it fails at max_n itself.
    pub onset: Option<u32>,
    pub max_n: u32,
}

#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.onset.is_some())
    }
}

/// Two-sided bound on the Neumann ratio: for nu = n + 1/2,
/// z/(2 nu) - z/(6 nu^2) <= Y_{nu-1}(z)/Y_nu(z) <= z/(2 nu) + 7z/(6 nu^2).
pub fn ratio_bound_holds(n: u32, z: f64) -> bool {
    if n == 0 {
        return false;
    }
    let nu = n as f64 + 0.5;
    // Y_{nu-1}/Y_nu = y_{n-1}(z)/y_n(z): the sqrt(2z/pi) factors cancel.
    let ratio = match y_ratio_prev(n, z) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let mid = z / (2.0 * nu);
    let lo = mid - z / (6.0 * nu * nu);
    let hi = mid + 7.0 * z / (6.0 * nu * nu);
    lo <= ratio && ratio <= hi
}

/// Bound on the logarithmic derivative G_nu(z) = z Y_nu'(z)/Y_nu(z):
/// -nu + z^2/(2 nu) - z^2/(6 nu^2) <= G_nu(z) <= -nu + z^2/(2 nu) + (7/6) z^2/nu^2 < 0.
pub fn log_deriv_bound_holds(n: u32, z: f64) -> bool {
    if n == 0 {
        return false;
    }
    let nu = n as f64 + 0.5;
    let ratio = match y_ratio_prev(n, z) {
        Ok(r) => r,
        Err(_) => return false,
    };
    // Y_nu' = Y_{nu-1} - (nu/z) Y_nu, so G_nu = z (Y_{nu-1}/Y_nu) - nu.
    let g = z * ratio - nu;
    let base = -nu + z * z / (2.0 * nu);
    let lo = base - z * z / (6.0 * nu * nu);
    let hi = base + 7.0 / 6.0 * z * z / (nu * nu);
    lo <= g && g <= hi && g < 0.0
}

/// Gap between Neumann ratios at the two wavenumbers:
/// |Y_nu(kp R)/Y_nu(kp R') - Y_nu(ks R)/Y_nu(ks R')|
///   <= (7/3) (ks(ks - kp)/nu) R (R - R') (R'/R)^nu.
pub fn neumann_gap_bound_holds(n: u32, kp: f64, ks: f64, r_out: f64, r_in: f64) -> bool {
    let nu = n as f64 + 0.5;
    // Cylinder ratio at two arguments keeps a sqrt(R/R') factor.
    let conv = (r_out / r_in).sqrt();
    let rp = match y_arg_ratio(n, kp * r_out, kp * r_in) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let rs = match y_arg_ratio(n, ks * r_out, ks * r_in) {
        Ok(r) => r,
        Err(_) => return false,
    };
    let lhs = (conv * (rp - rs)).abs();
    let rhs =
        7.0 / 3.0 * ks * (ks - kp) / nu * r_out * (r_out - r_in) * (r_in / r_out).powf(nu);
    lhs <= rhs
}

/// Gap between spherical Hankel ratios at the two wavenumbers:
/// |h_n(kp R)/h_n(kp R') - h_n(ks R)/h_n(ks R')|
///   <= (14/3) (ks(ks - kp)/n) R (R - R') (R'/R)^{n+1}, both kinds.
pub fn hankel_gap_bound_holds(n: u32, kp: f64, ks: f64, r_out: f64, r_in: f64) -> bool {
    if n == 0 {
        return false;
    }
    for kind in [HankelKind::First, HankelKind::Second] {
        let rp = match hankel_arg_ratio(kind, n, kp * r_out, kp * r_in) {
            Ok(r) => r,
            Err(_) => return false,
        };
        let rs = match hankel_arg_ratio(kind, n, ks * r_out, ks * r_in) {
            Ok(r) => r,
            Err(_) => return false,
        };
        let lhs = (rp - rs).norm();
        let rhs = 14.0 / 3.0 * ks * (ks - kp) / n as f64
            * r_out
            * (r_out - r_in)
            * (r_in / r_out).powi(n as i32 + 1);
        if lhs > rhs {
            return false;
        }
    }
    true
}

/// Smallest n0 in [1, max_n] such that pred holds for every n in n0..=max_n.
pub fn onset<F: Fn(u32) -> bool>(max_n: u32, pred: F) -> Option<u32> {
    let mut first = None;
    for n in (1..=max_n).rev() {
        if pred(n) {
            first = Some(n);
        } else {
            break;
        }
    }
    first
}

/// Scan all four asymptotic bounds over 1..=max_n and report onsets.
///
/// The single-argument bounds are checked at both z = kp R and z = ks R.
pub fn verify_bessel_lemmas(
    max_n: u32,
    kp: f64,
    ks: f64,
    r_out: f64,
    r_in: f64,
) -> LemmaReport {
    assert!(
        kp > 0.0 && kp < ks && r_in > 0.0 && r_in < r_out,
        "need 0 < kp < ks and 0 < R' < R"
    );
    let mut checks = Vec::new();
    for (label, z) in [("z = kp R", kp * r_out), ("z = ks R", ks * r_out)] {
        checks.push(LemmaCheck {
            name: format!("Neumann ratio two-sided bound, {label}"),
            onset: onset(max_n, |n| ratio_bound_holds(n, z)),
            max_n,
        });
        checks.push(LemmaCheck {
            name: format!("Neumann log-derivative bound and negativity, {label}"),
            onset: onset(max_n, |n| log_deriv_bound_holds(n, z)),
            max_n,
        });
    }
    checks.push(LemmaCheck {
        name: "Neumann two-wavenumber ratio gap".into(),
        onset: onset(max_n, |n| neumann_gap_bound_holds(n, kp, ks, r_out, r_in)),
        max_n,
    });
    checks.push(LemmaCheck {
        name: "Hankel two-wavenumber ratio gap".into(),
        onset: onset(max_n, |n| hankel_gap_bound_holds(n, kp, ks, r_out, r_in)),
        max_n,
    });
    LemmaReport { checks }
}
