//! Scalar root finding and 1-D maximisation.

use crate::error::{Error, Result};

/// Inverse golden ratio, (sqrt(5) - 1) / 2.
const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Number of grid points evaluated alongside the golden-section search.
pub const GRID_FALLBACK_POINTS: usize = 64;

/// Bisection on `[lo, hi]`. Stops once `|f(mid)| < ftol` or the bracket
/// collapses to floating-point resolution.
pub fn bisect<F>(f: F, lo: f64, hi: f64, ftol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoRoot { lo, hi });
    }
    for _ in 0..2000 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm.abs() < ftol || mid <= a || mid >= b {
            return Ok(mid);
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Outcome of [`maximize`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Maximum {
    pub arg: f64,
    pub value: f64,
    pub iterations: usize,
}

/// Golden-section search for the maximum of `f` on `[lo, hi]`.
///
/// A uniform grid of [`GRID_FALLBACK_POINTS`] points (endpoints included) is
/// scanned as well and the best of the two candidates is returned, so a
/// non-unimodal objective still yields the best sampled point.
pub fn maximize<F>(f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Maximum
where
    F: Fn(f64) -> f64,
{
    if hi <= lo {
        return Maximum {
            arg: lo,
            value: f(lo),
            iterations: 0,
        };
    }
    let (mut a, mut b) = (lo, hi);
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    let mut iterations = 0;
    while (b - a).abs() > tol && iterations < max_iter {
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
        iterations += 1;
    }
    let x = 0.5 * (a + b);
    let mut best = Maximum {
        arg: x,
        value: f(x),
        iterations,
    };
    let step = (hi - lo) / (GRID_FALLBACK_POINTS - 1) as f64;
    for k in 0..GRID_FALLBACK_POINTS {
        let xk = if k + 1 == GRID_FALLBACK_POINTS {
            hi
        } else {
            lo + step * k as f64
        };
        let v = f(xk);
        if v > best.value {
            best.arg = xk;
            best.value = v;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - std::f64::consts::SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn bisect_rejects_same_sign() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::NoRoot { .. })
        ));
    }

    #[test]
    fn maximize_interior_peak() {
        let m = maximize(|x| -(x - 0.3).powi(2), 0.0, 1.0, 1e-9, 200);
        assert!((m.arg - 0.3).abs() < 1e-6);
        assert!(m.iterations <= 200);
    }

    #[test]
    fn maximize_boundaries() {
        assert_eq!(maximize(|x| -x, 1.0, 2.0, 1e-9, 200).arg, 1.0);
        assert_eq!(maximize(|x| x, 1.0, 2.0, 1e-9, 200).arg, 2.0);
    }

    #[test]
    fn grid_fallback_catches_second_peak() {
        // Narrow tall bump near the right edge that golden section misses.
        let f = |x: f64| -(x - 0.2).powi(2) + if (x - 0.95).abs() < 0.02 { 5.0 } else { 0.0 };
        let m = maximize(f, 0.0, 1.0, 1e-9, 200);
        assert!(m.value >= 4.0);
    }
}
