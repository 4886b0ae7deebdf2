//! Bracketed scalar root finding: secant steps safeguarded by bisection.

use crate::error::{Error, Result};

const MAX_ITER: usize = 200;

/// Finds a root of `f` in `[lo, hi]`, which must bracket a sign change.
///
/// Each iteration tries a secant step through the bracket ends and falls
/// back to bisection when the step leaves the interval or the bracket fails
/// to shrink by at least half over two steps. Stops when the bracket width
/// is below `rel_tol * max(|lo|, |hi|)` or an exact zero is hit.
pub fn find_root<F>(f: F, lo: f64, hi: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) {
        return Err(Error::RootFinding(format!(
            "non-finite bracket values f({a})={fa}, f({b})={fb}"
        )));
    }
    if fa.signum() == fb.signum() {
        return Err(Error::RootFinding(format!(
            "[{a}, {b}] does not bracket a root"
        )));
    }

    let mut last_width = b - a;
    for iter in 0..MAX_ITER {
        let width = b - a;
        let scale = a.abs().max(b.abs());
        if width <= rel_tol * scale {
            break;
        }

        let secant = b - fb * (b - a) / (fb - fa);
        let use_bisection =
            !(secant > a && secant < b) || (iter % 2 == 1 && width > 0.5 * last_width);
        if iter % 2 == 1 {
            last_width = width;
        }
        let x = if use_bisection { 0.5 * (a + b) } else { secant };

        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }

    // endpoint with the smaller residual
    Ok(if fa.abs() < fb.abs() { a } else { b })
}
