//! Asymptotic Bessel bound checks. Each bound holds from some empirical
//! onset degree through the top of the tested range; the onsets below were
//! measured once with the reference configuration kp = pi/2, ks = pi,
//! R = 1, R' = 0.5 and are frozen here.

use specfun::lemmas::{
    hankel_gap_bound_holds, log_deriv_bound_holds, neumann_gap_bound_holds, onset,
    ratio_bound_holds,
};
use std::f64::consts::{FRAC_PI_2, PI};

const MAX_N: u32 = 200;

#[test]
fn ratio_bound_onsets() {
    // z = kp R = pi/2 and z = ks R = pi.
    assert_eq!(onset(MAX_N, |n| ratio_bound_holds(n, FRAC_PI_2)), Some(4));
    assert_eq!(onset(MAX_N, |n| ratio_bound_holds(n, PI)), Some(6));
}

#[test]
fn ratio_bound_holds_from_30_at_pi() {
    // Coarse check independent of the measured onset: the two-sided bound
    // holds for every n >= 30 at z = pi.
    for n in 30..=MAX_N {
        assert!(ratio_bound_holds(n, PI), "failed at n = {n}");
    }
}

#[test]
fn log_deriv_bound_onsets() {
    assert_eq!(
        onset(MAX_N, |n| log_deriv_bound_holds(n, FRAC_PI_2)),
        Some(4)
    );
    assert_eq!(onset(MAX_N, |n| log_deriv_bound_holds(n, PI)), Some(6));
    // Negativity in particular persists from n = 30 on.
    for n in 30..=MAX_N {
        assert!(log_deriv_bound_holds(n, PI), "failed at n = {n}");
    }
}

#[test]
fn neumann_gap_onset() {
    assert_eq!(
        onset(MAX_N, |n| neumann_gap_bound_holds(
            n, FRAC_PI_2, PI, 1.0, 0.5
        )),
        Some(1)
    );
}

#[test]
fn hankel_gap_onset() {
    assert_eq!(
        onset(MAX_N, |n| hankel_gap_bound_holds(n, FRAC_PI_2, PI, 1.0, 0.5)),
        Some(1)
    );
    // In particular the bound holds for all n >= 20.
    for n in 20..=MAX_N {
        assert!(hankel_gap_bound_holds(n, FRAC_PI_2, PI, 1.0, 0.5));
    }
}

#[test]
fn bundled_report() {
    let report = specfun::verify_bessel_lemmas(MAX_N, FRAC_PI_2, PI, 1.0, 0.5);
    assert!(report.all_hold());
    assert_eq!(report.checks.len(), 6);
}
