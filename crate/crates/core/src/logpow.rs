//! Log-domain evaluation of `cos^{2n}(pi d)`.
//!
//! Callers reduce their argument to `d`, the distance from the nearest
//! integer, in `[0, 1/2]`. Everything here works on `ln cos^2`, which is
//! accurate near both `d = 0` (through `ln_1p(-sin^2)`) and `d = 1/2`.

use std::f64::consts::PI;

/// `ln(f64::MIN_POSITIVE)`: below this `cos^{2n}` is flushed to exactly 0.
pub const LN_MIN_NORMAL: f64 = -708.396_418_532_264_1;

/// `ln cos^2(pi d)` for `d` in `[0, 1/2]`; `-inf` at `d = 1/2`.
pub fn ln_cos_sq(d: f64) -> f64 {
    debug_assert!((0.0..=0.5).contains(&d), "d = {d}");
    if d == 0.0 {
        return 0.0;
    }
    if d == 0.5 {
        return f64::NEG_INFINITY;
    }
    let theta = PI * d;
    if d <= 0.25 {
        let s = theta.sin();
        (-s * s).ln_1p()
    } else {
        2.0 * theta.cos().ln()
    }
}

/// `n ln cos^2(pi d)`, or `None` when `cos^{2n}(pi d)` is exactly zero or
/// underflows past the smallest normal float.
pub fn ln_cos_pow(n: u64, d: f64) -> Option<f64> {
    let l = ln_cos_sq(d);
    if l == 0.0 {
        return Some(0.0);
    }
    let v = n as f64 * l;
    (v >= LN_MIN_NORMAL).then_some(v)
}

/// Distance from `y` to the nearest integer, in `[0, 1/2]`.
pub fn fold_unit(y: f64) -> f64 {
    let frac = y - y.floor();
    frac.min(1.0 - frac)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_cos_sq_matches_direct_formula() {
        for &d in &[1e-3, 0.1, 0.2, 0.25, 0.3, 0.45, 0.499] {
            let direct = (PI * d).cos().powi(2).ln();
            assert!(
                (ln_cos_sq(d) - direct).abs() <= 1e-13 * direct.abs().max(1.0),
                "d = {d}"
            );
        }
    }

    #[test]
    fn ln_cos_sq_keeps_relative_accuracy_near_zero() {
        // ln cos^2(x) = -x^2 - x^4/3 - ...
        let d = 1e-9;
        let x = PI * d;
        let series = -x * x - x.powi(4) / 3.0;
        assert!((ln_cos_sq(d) / series - 1.0).abs() < 1e-12);
    }

    #[test]
    fn underflow_is_flushed() {
        assert_eq!(ln_cos_pow(1, 0.5), None);
        assert_eq!(ln_cos_pow(7, 0.0), Some(0.0));
        // cos^2(pi/4) = 1/2, and 2^-1022 is the smallest normal
        assert!(ln_cos_pow(1000, 0.25).is_some());
        assert_eq!(ln_cos_pow(1030, 0.25), None);
    }

    #[test]
    fn fold_unit_is_symmetric() {
        assert_eq!(fold_unit(3.0), 0.0);
        assert_eq!(fold_unit(2.5), 0.5);
        assert_eq!(fold_unit(-0.25), 0.25);
        assert_eq!(fold_unit(1.75), 0.25);
    }
}
