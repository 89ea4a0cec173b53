//! Prints the empirical onset of each asymptotic Bessel bound for the
//! reference configuration (kp = pi/2, ks = pi, R' = 0.5, R = 1), plus a
//! few spot values the test suite freezes.

use specfun::bessel::{hankel_arg_ratio, log_deriv, sph_bessel, y_arg_ratio, y_ratio_prev};
use specfun::HankelKind;

fn main() {
    let (kp, ks) = (std::f64::consts::FRAC_PI_2, std::f64::consts::PI);
    let report = specfun::verify_bessel_lemmas(200, kp, ks, 1.0, 0.5);
    for c in &report.checks {
        println!("{:55} onset = {:?} (max_n = {})", c.name, c.onset, c.max_n);
    }

    println!();
    let z100 = log_deriv(HankelKind::First, 100, std::f64::consts::PI).unwrap();
    println!("z_100(pi)              = {z100:.17}");
    println!(
        "hrat(200, pi, pi/2)    = {:.17e}",
        hankel_arg_ratio(HankelKind::First, 200, std::f64::consts::PI, kp)
            .unwrap()
            .re
    );
    println!("y_149/y_150 at 1.0     = {:.17}", y_ratio_prev(150, 1.0).unwrap());
    println!(
        "y_180(3.1)/y_180(1.55) = {:.17e}",
        y_arg_ratio(180, 3.1, 1.55).unwrap()
    );
    let b = sph_bessel(60, 0.1).unwrap();
    println!("j_60(0.1) = {:.17e}   y_60(0.1) = {:.17e}", b.j, b.y);
    let w = b.j * b.dy - b.dj * b.y;
    println!("wronskian defect at (60, 0.1): {:.3e}", (w - 100.0).abs() / 100.0);
}
