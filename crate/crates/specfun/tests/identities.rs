//! Finite-difference verification of the five vector calculus identity
//! groups (gradient, curl, divergence, Laplacian, double curl) for fields
//! f(rho) X_n^m, f(rho) U_n^m, f(rho) V_n^m, over three radial profiles.

use num_complex::Complex64;
use specfun::bessel::{sph_hankel, HankelKind};
use specfun::{verify_vector_identities, ModeIndex, RadialProfile};
use std::f64::consts::PI;

const STEP: f64 = 1e-4;

fn constant_profile() -> (
    impl Fn(f64) -> Complex64,
    impl Fn(f64) -> Complex64,
    impl Fn(f64) -> Complex64,
) {
    (
        |_| Complex64::new(1.0, 0.0),
        |_| Complex64::new(0.0, 0.0),
        |_| Complex64::new(0.0, 0.0),
    )
}

fn linear_profile() -> (
    impl Fn(f64) -> Complex64,
    impl Fn(f64) -> Complex64,
    impl Fn(f64) -> Complex64,
) {
    (
        |rho: f64| Complex64::new(rho, 0.0),
        |_| Complex64::new(1.0, 0.0),
        |_| Complex64::new(0.0, 0.0),
    )
}

/// f(rho) = h_1^(1)(kappa rho); second derivative from the spherical
/// Bessel equation h'' = -(2/z) h' - (1 - n(n+1)/z^2) h.
fn hankel_profile(
    kappa: f64,
) -> (
    impl Fn(f64) -> Complex64,
    impl Fn(f64) -> Complex64,
    impl Fn(f64) -> Complex64,
) {
    let f = move |rho: f64| sph_hankel(HankelKind::First, 1, kappa * rho).unwrap().0;
    let df = move |rho: f64| kappa * sph_hankel(HankelKind::First, 1, kappa * rho).unwrap().1;
    let ddf = move |rho: f64| {
        let z = kappa * rho;
        let (h, dh) = sph_hankel(HankelKind::First, 1, z).unwrap();
        kappa * kappa * (-(2.0 / z) * dh - (1.0 - 2.0 / (z * z)) * h)
    };
    (f, df, ddf)
}

#[test]
fn divergence_free_toroidal_mode() {
    let (f, df, ddf) = constant_profile();
    let profile = RadialProfile {
        f: &f,
        df: &df,
        ddf: &ddf,
    };
    let report =
        verify_vector_identities(ModeIndex::new(1, 0).unwrap(), &profile, 0.9, STEP);
    assert!(report.div < 1e-7, "div residual {:.3e}", report.div);
}

#[test]
fn gradient_identity_linear_profile() {
    let (f, df, ddf) = linear_profile();
    let profile = RadialProfile {
        f: &f,
        df: &df,
        ddf: &ddf,
    };
    let report =
        verify_vector_identities(ModeIndex::new(2, 1).unwrap(), &profile, 0.8, STEP);
    assert!(report.grad < 1e-6, "grad residual {:.3e}", report.grad);
}

#[test]
fn double_curl_identity_radiating_profile() {
    let (f, df, ddf) = hankel_profile(PI);
    let profile = RadialProfile {
        f: &f,
        df: &df,
        ddf: &ddf,
    };
    let report =
        verify_vector_identities(ModeIndex::new(1, 0).unwrap(), &profile, 0.8, STEP);
    assert!(
        report.curl_curl < 1e-5,
        "double curl residual {:.3e}",
        report.curl_curl
    );
}

/// All five identity groups, all modes n <= 4, three profiles.
#[test]
fn all_identities_all_modes() {
    let (cf, cdf, cddf) = constant_profile();
    let (lf, ldf, lddf) = linear_profile();
    let (hf, hdf, hddf) = hankel_profile(PI);
    let profiles: [(&str, RadialProfile); 3] = [
        (
            "constant",
            RadialProfile {
                f: &cf,
                df: &cdf,
                ddf: &cddf,
            },
        ),
        (
            "linear",
            RadialProfile {
                f: &lf,
                df: &ldf,
                ddf: &lddf,
            },
        ),
        (
            "outgoing",
            RadialProfile {
                f: &hf,
                df: &hdf,
                ddf: &hddf,
            },
        ),
    ];
    for (name, profile) in &profiles {
        for n in 0..=4u32 {
            for m in -(n as i32)..=(n as i32) {
                let mode = ModeIndex::new(n, m).unwrap();
                let report = verify_vector_identities(mode, profile, 0.9, STEP);
                assert!(!report.step_warning);
                assert!(
                    report.max() < 1e-5,
                    "profile {name}, mode ({n},{m}): residuals grad {:.2e} curl {:.2e} \
                     div {:.2e} lap {:.2e} curlcurl {:.2e}",
                    report.grad,
                    report.curl,
                    report.div,
                    report.laplacian,
                    report.curl_curl
                );
            }
        }
    }
}

#[test]
fn tiny_step_sets_warning() {
    let (f, df, ddf) = constant_profile();
    let profile = RadialProfile {
        f: &f,
        df: &df,
        ddf: &ddf,
    };
    let report =
        verify_vector_identities(ModeIndex::new(1, 0).unwrap(), &profile, 0.9, 1e-8);
    assert!(report.step_warning);
}
