//! Spherical Bessel and Hankel functions of real positive argument.
//!
//! Evaluation strategy follows standard stability practice: y_n by upward
//! recurrence (y is the dominant solution), j_n by Miller's downward
//! recurrence normalized against the closed forms of j_0 and j_1, and a
//! power series for very small arguments. Quantities needed at large degree
//! (logarithmic derivatives and ratios of Hankel or Neumann functions at
//! two arguments) are computed through ratio recurrences that never form
//! the overflowing function values themselves.

use crate::{c64, SpecFunError};
use num_complex::Complex64;

/// Which kind of Hankel function, h^(1) = j + iy or h^(2) = j - iy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HankelKind {
    First,
    Second,
}

/// Values and derivatives of the spherical Bessel functions at one point.
#[derive(Debug, Clone, Copy)]
pub struct SphBessel {
    pub j: f64,
    pub y: f64,
    pub dj: f64,
    pub dy: f64,
}

const SERIES_THRESHOLD: f64 = 1e-3;
const MAX_DEGREE: u32 = 200;

fn check_arg(what: &'static str, x: f64) -> Result<(), SpecFunError> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(SpecFunError::Domain {
            what,
            detail: format!("argument x = {x} must be positive and finite"),
        });
    }
    Ok(())
}

/// j_n, y_n and their derivatives for 0 <= n <= 200, x > 0.
///
/// Satisfies the Wronskian identity j_n y_n' - j_n' y_n = x^-2 to near
/// machine precision over the working range. Degrees and arguments whose
/// y_n exceeds f64 range produce a range error rather than infinities.
pub fn sph_bessel(n: u32, x: f64) -> Result<SphBessel, SpecFunError> {
    check_arg("sph_bessel", x)?;
    if n > MAX_DEGREE {
        return Err(SpecFunError::Domain {
            what: "sph_bessel",
            detail: format!("degree n = {n} exceeds supported maximum {MAX_DEGREE}"),
        });
    }
    if x < SERIES_THRESHOLD {
        return series_small_x(n, x);
    }

    // y_n and y_{n-1} by upward recurrence.
    let (yn, ynm1) = y_upward(n, x).ok_or(SpecFunError::Range {
        what: "sph_bessel",
        n,
        x,
    })?;
    let dy = if n == 0 {
        -y_closed(1, x)
    } else {
        ynm1 - (n as f64 + 1.0) / x * yn
    };

    // j_n and j_{n-1} by Miller's downward recurrence.
    let (jn, jnm1) = miller_j(n, x);
    let dj = if n == 0 {
        -j_closed(1, x)
    } else {
        jnm1 - (n as f64 + 1.0) / x * jn
    };

    Ok(SphBessel {
        j: jn,
        y: yn,
        dj,
        dy,
    })
}

/// Spherical Hankel function value and derivative.
pub fn sph_hankel(
    kind: HankelKind,
    n: u32,
    x: f64,
) -> Result<(Complex64, Complex64), SpecFunError> {
    let b = sph_bessel(n, x)?;
    let (h, dh) = (c64(b.j, b.y), c64(b.dj, b.dy));
    Ok(match kind {
        HankelKind::First => (h, dh),
        HankelKind::Second => (h.conj(), dh.conj()),
    })
}

/// Logarithmic derivative z_n(t) = t h_n'(t) / h_n(t).
///
/// Computed through the upward ratio recurrence for h_{n-1}/h_n, which is
/// stable because the Hankel functions are recurrence-dominant, and which
/// never forms the (potentially overflowing) function values. Valid for
/// degrees far beyond the value-level evaluator.
pub fn log_deriv(kind: HankelKind, n: u32, t: f64) -> Result<Complex64, SpecFunError> {
    check_arg("log_deriv", t)?;
    let z1 = log_deriv_h1(n, t)?;
    Ok(match kind {
        HankelKind::First => z1,
        HankelKind::Second => z1.conj(),
    })
}

fn log_deriv_h1(n: u32, t: f64) -> Result<Complex64, SpecFunError> {
    // z_0 = -1 + it from h_0(t) = -i e^{it} / t.
    if n == 0 {
        return Ok(c64(-1.0, t));
    }
    let r = hankel_prev_ratios(n, t, |_, _| {})?;
    Ok(t * r - c64(n as f64 + 1.0, 0.0))
}

/// Runs the upward recurrence for r_k = h_{k-1}(x)/h_k(x), k = 1..=n,
/// returning r_n. The visitor sees every intermediate (k, r_k).
fn hankel_prev_ratios<F: FnMut(u32, Complex64)>(
    n: u32,
    x: f64,
    mut visit: F,
) -> Result<Complex64, SpecFunError> {
    debug_assert!(n >= 1);
    // r_1 = h_0/h_1 = ix/(x + i).
    let mut r = c64(0.0, x) / c64(x, 1.0);
    visit(1, r);
    for k in 1..n {
        let denom = c64((2 * k + 1) as f64 / x, 0.0) - r;
        if denom.norm() < 1e-300 {
            return Err(SpecFunError::Internal {
                what: "hankel ratio recurrence",
                detail: format!("vanishing denominator at k = {k}, x = {x}"),
            });
        }
        r = denom.inv();
        visit(k + 1, r);
    }
    Ok(r)
}

/// h_n(a) / h_n(b) for the same degree at two arguments, overflow-free.
///
/// The two ratio recurrences are interleaved so that only the slowly
/// growing partial products h_k(a)/h_k(b) are ever held, never the function
/// values. Needed at degrees where |h_n| itself exceeds f64 range.
pub fn hankel_arg_ratio(
    kind: HankelKind,
    n: u32,
    a: f64,
    b: f64,
) -> Result<Complex64, SpecFunError> {
    check_arg("hankel_arg_ratio", a)?;
    check_arg("hankel_arg_ratio", b)?;
    // h_0(a)/h_0(b) = (b/a) e^{i(a-b)}.
    let mut ratio = b / a * Complex64::from_polar(1.0, a - b);
    if n == 0 {
        return Ok(match kind {
            HankelKind::First => ratio,
            HankelKind::Second => ratio.conj(),
        });
    }
    let mut ra = Vec::with_capacity(n as usize);
    let mut rb = Vec::with_capacity(n as usize);
    hankel_prev_ratios(n, a, |_, r| ra.push(r))?;
    hankel_prev_ratios(n, b, |_, r| rb.push(r))?;
    for k in 0..n as usize {
        // h_k(a)/h_k(b) = h_{k-1}(a)/h_{k-1}(b) * r_k(b)/r_k(a).
        ratio *= rb[k] / ra[k];
    }
    Ok(match kind {
        HankelKind::First => ratio,
        HankelKind::Second => ratio.conj(),
    })
}

/// y_{n-1}(z) / y_n(z) by the upward ratio recurrence, overflow-free.
pub fn y_ratio_prev(n: u32, z: f64) -> Result<f64, SpecFunError> {
    check_arg("y_ratio_prev", z)?;
    if n == 0 {
        return Err(SpecFunError::Domain {
            what: "y_ratio_prev",
            detail: "ratio y_{n-1}/y_n needs n >= 1".into(),
        });
    }
    let mut s = y_closed(0, z) / y_closed(1, z);
    for k in 1..n {
        s = 1.0 / ((2 * k + 1) as f64 / z - s);
    }
    Ok(s)
}

/// y_n(a) / y_n(b) via interleaved ratio recurrences, overflow-free.
///
/// The starting index is chosen between 0 and 1 to avoid anchoring the
/// telescoping product on a near-zero of y_0.
pub fn y_arg_ratio(n: u32, a: f64, b: f64) -> Result<f64, SpecFunError> {
    check_arg("y_arg_ratio", a)?;
    check_arg("y_arg_ratio", b)?;
    let start = if y_closed(0, a).abs().min(y_closed(0, b).abs())
        >= y_closed(1, a).abs().min(y_closed(1, b).abs())
    {
        0
    } else {
        1
    };
    if n <= start {
        return Ok(y_closed(n, a) / y_closed(n, b));
    }
    let mut ratio = y_closed(start, a) / y_closed(start, b);
    let mut sa = y_closed(start.max(1) - 1, a) / y_closed(start.max(1), a);
    let mut sb = y_closed(start.max(1) - 1, b) / y_closed(start.max(1), b);
    if start == 0 {
        // Advance the ratio recurrences to k = 1 alongside the product.
        ratio *= sb / sa;
    }
    for k in 1..n {
        sa = 1.0 / ((2 * k + 1) as f64 / a - sa);
        sb = 1.0 / ((2 * k + 1) as f64 / b - sb);
        ratio *= sb / sa;
    }
    Ok(ratio)
}

fn j_closed(n: u32, x: f64) -> f64 {
    match n {
        0 => {
            if x.abs() < 1e-4 {
                1.0 - x * x / 6.0 * (1.0 - x * x / 20.0)
            } else {
                x.sin() / x
            }
        }
        1 => {
            if x.abs() < 1e-2 {
                x / 3.0 * (1.0 - x * x / 10.0 * (1.0 - x * x / 28.0))
            } else {
                (x.sin() / x - x.cos()) / x
            }
        }
        _ => unreachable!("j_closed only covers n = 0, 1"),
    }
}

fn y_closed(n: u32, x: f64) -> f64 {
    match n {
        0 => -x.cos() / x,
        1 => -x.cos() / (x * x) - x.sin() / x,
        _ => unreachable!("y_closed only covers n = 0, 1"),
    }
}

/// Upward recurrence for y. Returns (y_n, y_{n-1}); y_{-1} is never used
/// because the n = 0 caller takes the closed form directly.
fn y_upward(n: u32, x: f64) -> Option<(f64, f64)> {
    if n == 0 {
        return Some((y_closed(0, x), 0.0));
    }
    let mut prev = y_closed(0, x);
    let mut cur = y_closed(1, x);
    for k in 1..n {
        let next = (2 * k + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
        if !cur.is_finite() {
            return None;
        }
    }
    Some((cur, prev))
}

/// Miller's downward recurrence for j_n, normalized against whichever of
/// j_0, j_1 has the larger magnitude (they share no zeros). Returns
/// (j_n, j_{n-1}); the n = 0 caller ignores the second slot.
fn miller_j(n: u32, x: f64) -> (f64, f64) {
    let m_start = n.max(x.ceil() as u32) + 40;
    let mut fkp1 = 0.0_f64;
    let mut fk = 1e-300_f64;
    // Captured unnormalized values at the indices we need.
    let mut cap_n = 0.0;
    let mut cap_nm1 = 0.0;
    let mut cap_1 = 0.0;
    let cap_0;
    let mut k = m_start;
    loop {
        if k == n {
            cap_n = fk;
        }
        if n > 0 && k == n - 1 {
            cap_nm1 = fk;
        }
        if k == 1 {
            cap_1 = fk;
        }
        if k == 0 {
            cap_0 = fk;
            break;
        }
        let fkm1 = (2 * k + 1) as f64 / x * fk - fkp1;
        fkp1 = fk;
        fk = fkm1;
        if fk.abs() > 1e250 {
            let scale = 1e-250;
            fk *= scale;
            fkp1 *= scale;
            // cap_0 needs no rescale: it is captured at the final index,
            // immediately before the loop exits.
            cap_n *= scale;
            cap_nm1 *= scale;
            cap_1 *= scale;
        }
        k -= 1;
    }
    let (j0, j1) = (j_closed(0, x), j_closed(1, x));
    let scale = if j0.abs() >= j1.abs() {
        j0 / cap_0
    } else {
        j1 / cap_1
    };
    (cap_n * scale, cap_nm1 * scale)
}

/// Power series for x below the series threshold, with explicit
/// underflow/overflow accounting done in log space.
fn series_small_x(n: u32, x: f64) -> Result<SphBessel, SpecFunError> {
    let ln_x = x.ln();
    // ln (2n+1)!! and ln (2n-1)!!.
    let ln_dfact_2np1: f64 = (0..=n).map(|k| ((2 * k + 1) as f64).ln()).sum();
    let ln_dfact_2nm1: f64 = ln_dfact_2np1 - ((2 * n + 1) as f64).ln();

    // y_n ~ -(2n-1)!! / x^{n+1}: overflow check.
    let ln_y = ln_dfact_2nm1 - (n as f64 + 1.0) * ln_x;
    if ln_y > 705.0 {
        return Err(SpecFunError::Range {
            what: "sph_bessel series",
            n,
            x,
        });
    }

    let j = j_series(n, x, ln_dfact_2np1);
    let jm1 = if n >= 1 {
        j_series(n - 1, x, ln_dfact_2np1 - ((2 * n + 1) as f64).ln())
    } else {
        0.0
    };
    let y = y_series(n, x, ln_dfact_2nm1);
    let ym1 = if n >= 1 {
        y_series(n - 1, x, ln_dfact_2nm1 - ((2 * n - 1) as f64).ln())
    } else {
        0.0
    };
    let (dj, dy) = if n == 0 {
        (-j_series(1, x, (3.0_f64).ln()), -y_series(1, x, 0.0))
    } else {
        let c = (n as f64 + 1.0) / x;
        (jm1 - c * j, ym1 - c * y)
    };
    Ok(SphBessel { j, y, dj, dy })
}

/// j_n(x) = x^n/(2n+1)!! [1 - (x^2/2)/(1!(2n+3)) + (x^2/2)^2/(2!(2n+3)(2n+5)) - ...]
fn j_series(n: u32, x: f64, ln_dfact_2np1: f64) -> f64 {
    let ln_lead = n as f64 * x.ln() - ln_dfact_2np1;
    if ln_lead < -744.0 {
        return 0.0;
    }
    let lead = ln_lead.exp();
    let h = x * x / 2.0;
    let d1 = (2 * n + 3) as f64;
    let d2 = (2 * n + 5) as f64;
    let d3 = (2 * n + 7) as f64;
    lead * (1.0 - h / d1 + h * h / (2.0 * d1 * d2) - h * h * h / (6.0 * d1 * d2 * d3))
}

/// y_n(x) = -(2n-1)!!/x^{n+1} [1 + (x^2/2)/(1!(2n-1)) + (x^2/2)^2/(2!(2n-1)(2n-3)) + ...]
/// with the sign pattern absorbed by the (2j-1-2n) factors.
fn y_series(n: u32, x: f64, ln_dfact_2nm1: f64) -> f64 {
    let ln_lead = ln_dfact_2nm1 - (n as f64 + 1.0) * x.ln();
    let lead = -ln_lead.exp();
    let h = -x * x / 2.0;
    let d1 = 1.0 - 2.0 * n as f64;
    let d2 = 3.0 - 2.0 * n as f64;
    let d3 = 5.0 - 2.0 * n as f64;
    let mut sum = 1.0 + h / d1;
    if d2 != 0.0 {
        sum += h * h / (2.0 * d1 * d2);
        if d3 != 0.0 {
            sum += h * h * h / (6.0 * d1 * d2 * d3);
        }
    }
    lead * sum
}
