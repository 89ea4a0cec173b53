//! Validation of the parameter types and the concurrent mode-matrix cache.

use std::f64::consts::PI;

use dtn::{dtn_mode_matrix, lambda_n, DtnCache, DtnError, ElasticParams, SphericalGeometry};

#[test]
fn wavenumbers_are_ordered_and_derived() {
    let p = ElasticParams::new(2.0, 1.0, PI).unwrap();
    assert_eq!(p.kappa_p(), PI / 2.0);
    assert_eq!(p.kappa_s(), PI);
    assert!(p.kappa_p() < p.kappa_s());
}

#[test]
fn inadmissible_materials_are_rejected() {
    for (lambda, mu, omega) in [
        (2.0, 0.0, PI),
        (2.0, -1.0, PI),
        (-3.0, 1.0, PI),
        (2.0, 1.0, 0.0),
        (2.0, 1.0, -2.0),
        (f64::NAN, 1.0, PI),
        (2.0, f64::NAN, PI),
        (2.0, 1.0, f64::NAN),
    ] {
        assert!(
            matches!(
                ElasticParams::new(lambda, mu, omega),
                Err(DtnError::InvalidParams { .. })
            ),
            "accepted ({lambda}, {mu}, {omega})"
        );
    }
}

#[test]
fn degenerate_geometries_are_rejected() {
    for (inner, outer) in [(0.0, 1.0), (-1.0, 1.0), (1.0, 1.0), (1.5, 1.0), (0.5, f64::NAN)] {
        assert!(
            matches!(
                SphericalGeometry::new(inner, outer),
                Err(DtnError::InvalidGeometry { .. })
            ),
            "accepted ({inner}, {outer})"
        );
    }
}

#[test]
fn cache_returns_bit_identical_values() {
    let params = ElasticParams::new(2.0, 1.0, PI).unwrap();
    let cache = DtnCache::new();
    for n in 0..=40u32 {
        let cached = cache.mode_matrix(&params, 1.0, n);
        let direct = dtn_mode_matrix(&params, 1.0, n);
        assert_eq!(cached, direct, "matrix at n = {n}");
        assert_eq!(cache.lambda(&params, 1.0, n), lambda_n(&params, 1.0, n));
    }
    // Re-reading does not grow the map.
    let len = cache.len();
    let _ = cache.mode_matrix(&params, 1.0, 17);
    assert_eq!(cache.len(), len);
    assert_eq!(len, 41);
}

#[test]
fn cache_is_safe_under_concurrent_mixed_access() {
    let params = ElasticParams::new(2.0, 1.0, PI).unwrap();
    let cache = DtnCache::new();
    std::thread::scope(|scope| {
        for t in 0..8usize {
            let cache = &cache;
            let params = &params;
            scope.spawn(move || {
                // Threads sweep overlapping degree ranges in different
                // orders so reads and writes interleave.
                for k in 0..120u32 {
                    let n = (k + 7 * t as u32) % 60;
                    let got = cache.mode_matrix(params, 1.0, n);
                    assert_eq!(got, dtn_mode_matrix(params, 1.0, n));
                }
            });
        }
    });
    assert_eq!(cache.len(), 60);
}

#[test]
fn distinct_parameters_get_distinct_entries() {
    let a = ElasticParams::new(2.0, 1.0, PI).unwrap();
    let b = ElasticParams::new(2.0, 1.0, 2.0 * PI).unwrap();
    let cache = DtnCache::new();
    let ma = cache.mode_matrix(&a, 1.0, 3);
    let mb = cache.mode_matrix(&b, 1.0, 3);
    assert_ne!(ma, mb);
    assert_eq!(cache.len(), 2);
    // Same parameters at a different radius is a third entry.
    let _ = cache.mode_matrix(&a, 1.25, 3);
    assert_eq!(cache.len(), 3);
}
