//! Verification of the truncation-error model and the order selector,
//! including a brute-force dual route for the frozen selections.

use dtn::{
    peak_order, select_truncation, truncation_error, DtnError, SphericalGeometry,
    MAX_TRUNCATION_ORDER,
};
use proptest::prelude::*;

fn geometry(r_inner: f64) -> SphericalGeometry {
    SphericalGeometry::new(r_inner, 1.0).unwrap()
}

/// Brute-force reference: the smallest order N in [1, horizon] such that
/// the model is within tolerance at N and at every larger order up to the
/// horizon. The horizon is far beyond the peak, where the model is
/// vanishingly small, so it decides the same N as the analytic selector.
fn brute_force_select(geom: &SphericalGeometry, norm: f64, tol: f64, horizon: u32) -> Option<u32> {
    let eps = |n: u32| truncation_error(geom, n, norm);
    let mut best = None;
    for n in (1..=horizon).rev() {
        if eps(n) <= tol {
            best = Some(n);
        } else {
            break;
        }
    }
    best
}

#[test]
fn model_is_the_stated_product() {
    let geom = geometry(0.5);
    for n in [1u32, 3, 17] {
        let want = n as f64 * 0.5f64.powi(n as i32) * 2.25;
        assert_eq!(truncation_error(&geom, n, 2.25), want);
    }
}

#[test]
fn peak_orders_for_benchmark_gaps() {
    assert_eq!(peak_order(&geometry(0.5)), 2);
    assert_eq!(peak_order(&geometry(0.9)), 10);
}

#[test]
fn selects_32_for_half_radius_gap() {
    let geom = geometry(0.5);
    let n = select_truncation(&geom, 1.0, 1e-8).unwrap();
    assert_eq!(n, 32);
    assert_eq!(brute_force_select(&geom, 1.0, 1e-8, 2000), Some(32));
    assert!(truncation_error(&geom, 32, 1.0) <= 1e-8);
    assert!(truncation_error(&geom, 31, 1.0) > 1e-8);
}

#[test]
fn selects_1_when_tolerance_dominates_peak() {
    let geom = geometry(0.5);
    assert_eq!(select_truncation(&geom, 1.0, 1.0).unwrap(), 1);
    assert_eq!(brute_force_select(&geom, 1.0, 1.0, 2000), Some(1));
}

#[test]
fn selects_227_for_thin_gap() {
    let geom = geometry(0.9);
    let n = select_truncation(&geom, 1.0, 1e-8).unwrap();
    assert_eq!(n, 227);
    assert_eq!(brute_force_select(&geom, 1.0, 1e-8, 2000), Some(227));
}

#[test]
fn very_thin_gap_exceeds_capacity() {
    let geom = geometry(0.99);
    match select_truncation(&geom, 1.0, 1e-8) {
        Err(DtnError::TruncationCapacity { reached, max, .. }) => {
            assert_eq!(reached, MAX_TRUNCATION_ORDER);
            assert_eq!(max, MAX_TRUNCATION_ORDER);
        }
        other => panic!("expected capacity error, got {other:?}"),
    }
}

#[test]
fn incident_norm_scales_the_selection() {
    // A stronger incident field demands a higher order at the same
    // tolerance, never a lower one.
    let geom = geometry(0.5);
    let weak = select_truncation(&geom, 1.0, 1e-6).unwrap();
    let strong = select_truncation(&geom, 1e3, 1e-6).unwrap();
    assert!(strong > weak, "weak {weak}, strong {strong}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn model_decreases_strictly_past_the_peak(
        ratio in 0.05f64..0.95,
        norm in 0.1f64..100.0,
        offset in 0u32..40,
    ) {
        let geom = SphericalGeometry::new(ratio, 1.0).unwrap();
        let n = peak_order(&geom) + offset;
        prop_assert!(
            truncation_error(&geom, n + 1, norm) < truncation_error(&geom, n, norm)
        );
    }

    #[test]
    fn selection_meets_its_own_tolerance(
        ratio in 0.1f64..0.8,
        norm in 0.1f64..10.0,
        tol_exp in -9f64..-1f64,
    ) {
        let tol = 10f64.powf(tol_exp);
        let geom = SphericalGeometry::new(ratio, 1.0).unwrap();
        let n = select_truncation(&geom, norm, tol).unwrap();
        prop_assert!(truncation_error(&geom, n, norm) <= tol);
        for ahead in 1..=50u32 {
            prop_assert!(truncation_error(&geom, n + ahead, norm) <= tol);
        }
        prop_assert_eq!(brute_force_select(&geom, norm, tol, 2000), Some(n));
    }
}
