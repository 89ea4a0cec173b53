//! Scans the per-mode DtN quantities over degree and prints the empirical
//! constants that the test suite freezes: the positive-definiteness onset of
//! the symmetrized DtN matrix, the stability of the linear-growth and
//! exponential-decay envelopes, the large-degree asymptotes, and the
//! selected truncation orders for representative sphere gaps.

use dtn::{
    dtn_mode_matrix, lambda_n, mhat_definiteness, peak_order, propagation_matrix,
    select_truncation, truncation_error, ElasticParams, SphericalGeometry,
};

fn main() {
    let params = ElasticParams::new(2.0, 1.0, std::f64::consts::PI).unwrap();
    let r = 1.0;

    // Positive-definiteness onset of -(M_n + M_n^*)/2.
    let mut onset = None;
    for n in (0..=200u32).rev() {
        if mhat_definiteness(&params, r, n) <= 0.0 {
            break;
        }
        onset = Some(n);
    }
    println!("mhat positive-definite from n = {onset:?} through 200");
    for n in 0..=8 {
        println!("  min eig at n = {n}: {:+.6e}", mhat_definiteness(&params, r, n));
    }

    // Stability of max_ij |M_n,ij| / n over the linear-growth window.
    let growth: Vec<f64> = (10..=100)
        .map(|n| dtn_mode_matrix(&params, r, n).max_abs() / n as f64)
        .collect();
    let (gmin, gmax) = minmax(&growth);
    println!(
        "growth envelope |M|/n over n in [10,100]: min {gmin:.6}, max {gmax:.6}, max/min {:.4}",
        gmax / gmin
    );

    // Stability of max_ij |Q_n,ij| / (n (R'/R)^n) over the decay window.
    let geom = SphericalGeometry::new(0.5, 1.0).unwrap();
    let decay: Vec<f64> = (10..=40)
        .map(|n| {
            propagation_matrix(&params, &geom, n).max_abs() / (n as f64 * 0.5f64.powi(n as i32))
        })
        .collect();
    let (dmin, dmax) = minmax(&decay);
    println!(
        "decay envelope |Q|/(n (R'/R)^n) over n in [10,40]: min {dmin:.6}, max {dmax:.6}, max/min {:.4}",
        dmax / dmin
    );

    // Large-degree asymptotes at n = 200.
    let lam = lambda_n(&params, r, 200);
    let asym = -(params.kappa_p().powi(2) + params.kappa_s().powi(2)) * r * r / 2.0;
    println!(
        "Lambda_200 = {lam:.6}, asymptote {asym:.6}, rel gap {:.3e}",
        (lam - asym).norm() / asym.abs()
    );
    let z = specfun::log_deriv(specfun::HankelKind::First, 200, params.kappa_s() * r).unwrap();
    let z_asym = -(200.0 + 1.0) + (params.kappa_s() * r).powi(2) / (2.0 * 200.0);
    println!(
        "z_200(kappa_s R) = {z:.6}, asymptote {z_asym:.6}, rel gap {:.3e}",
        (z - z_asym).norm() / z_asym.abs()
    );

    // Im Lambda_n stays strictly negative.
    let worst = (0..=200u32)
        .map(|n| lambda_n(&params, r, n).im)
        .fold(f64::NEG_INFINITY, f64::max);
    println!("max over n <= 200 of Im Lambda_n = {worst:.6e}");

    // Truncation-order selection.
    for (ri, tol) in [(0.5, 1e-8), (0.5, 1.0), (0.9, 1e-8)] {
        let g = SphericalGeometry::new(ri, 1.0).unwrap();
        let n = select_truncation(&g, 1.0, tol).unwrap();
        println!(
            "select(R' = {ri}, tol = {tol:e}) = {n} (peak order {}, eps_N = {:.3e}, eps_{{N-1}} = {:.3e})",
            peak_order(&g),
            truncation_error(&g, n, 1.0),
            truncation_error(&g, n.saturating_sub(1).max(1), 1.0),
        );
    }
    let tight = SphericalGeometry::new(0.99, 1.0).unwrap();
    println!("select(R' = 0.99, tol = 1e-8) -> {:?}", select_truncation(&tight, 1.0, 1e-8));
}

fn minmax(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        })
}
