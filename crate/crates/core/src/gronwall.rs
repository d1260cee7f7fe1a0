//! `G_alpha` along the constructive subsequences `m!`, `lcm(1..m)` and
//! `P_m`, compared with `zeta(alpha)`.
//!
//! Every `k <= m` divides `m!`, which gives the sandwich
//!
//! ```text
//! sum_{k<=m} (1/k - 1/(4 m!))^alpha  <=  G_alpha(m!)  <=  zeta(alpha)
//! ```
//!
//! and the left side differs from `sum_{k<=m} k^-alpha` by at most
//! `(alpha/4) / (m-1)!`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logpow::LN_MIN_NORMAL;
use crate::numtheory::{
    factorial_factorization, g_from_factorization, lcm_factorization,
    primorial_power_factorization, zeta, Factorization, ZetaValue,
};
use crate::sum::{next_down, Compensated};

/// Hard cap on `m` for sequence runs.
pub const MAX_M: u64 = 500;

pub const DEFAULT_M_MAX: u64 = 40;

/// Default width of the zeta bracket.
pub const DEFAULT_ZETA_TOL: f64 = 1e-10;

/// Which integer sequence `x_m` is fed to `G_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `m!`
    Factorial,
    /// `lcm(1, ..., m)`
    Lcm,
    /// `(p_1 ... p_m)^m`
    PrimorialPower,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Factorial, Variant::Lcm, Variant::PrimorialPower];

    pub fn name(&self) -> &'static str {
        match self {
            Variant::Factorial => "factorial",
            Variant::Lcm => "lcm",
            Variant::PrimorialPower => "primorial_power",
        }
    }

    pub fn factorization(&self, m: u64) -> Result<Factorization> {
        match self {
            Variant::Factorial => factorial_factorization(m),
            Variant::Lcm => lcm_factorization(m),
            Variant::PrimorialPower => primorial_power_factorization(m),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown variant `{s}`")))
    }
}

/// One row of a convergence table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRecord {
    pub m: u64,
    pub variant: Variant,
    pub g_value: f64,
    /// Lower end of the zeta bracket.
    pub zeta_value: f64,
    pub zeta_tail_bound: f64,
    /// `zeta_value - g_value`.
    pub gap: f64,
    /// `sum_{k<=m} (1/k - 1/(4 m!))^alpha`; factorial variant only.
    pub lower_bound: Option<f64>,
    /// `(alpha/4)/(m-1)!`; factorial variant only.
    pub delta_bound: Option<f64>,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::out_of_range("alpha", alpha, "alpha > 1"));
    }
    Ok(())
}

/// `m!` as an `f64`, exactly rounded from the integer while it fits a `u64`.
fn small_factorial(m: u64) -> Option<f64> {
    (1..=m)
        .try_fold(1u64, |acc, k| acc.checked_mul(k))
        .map(|v| v as f64)
}

fn ln_factorial(m: u64) -> f64 {
    let mut acc = Compensated::new();
    for k in 2..=m {
        acc.add((k as f64).ln());
    }
    acc.value()
}

/// `c / m!`, or `None` when it falls below the smallest normal float.
fn over_factorial(c: f64, m: u64) -> Option<f64> {
    if let Some(f) = small_factorial(m) {
        return Some(c / f);
    }
    let ln = c.ln() - ln_factorial(m);
    (ln >= LN_MIN_NORMAL).then(|| ln.exp())
}

/// `sum_{k<=m} k^-alpha`, smallest term first.
pub fn zeta_partial_sum(alpha: f64, m: u64) -> f64 {
    let mut acc = Compensated::new();
    for k in (1..=m).rev() {
        acc.add((k as f64).powf(-alpha));
    }
    acc.value()
}

/// `sum_{k=1}^{m} (1/k - 1/(4 m!))^alpha`.
///
/// When `1/(4 m!)` underflows (from `m = 171` on) the correction is dropped
/// and the sum is lowered by one ulp so it stays a lower bound.
pub fn partial_sum_lower_bound(alpha: f64, m: u64) -> Result<f64> {
    check_alpha(alpha)?;
    if m < 2 {
        return Err(Error::out_of_range("m", m, "m >= 2"));
    }
    let shift = over_factorial(0.25, m);
    let eps = shift.unwrap_or(0.0);
    let mut acc = Compensated::new();
    for k in (1..=m).rev() {
        acc.add((1.0 / k as f64 - eps).powf(alpha));
    }
    let sum = acc.value();
    Ok(if shift.is_none() { next_down(sum) } else { sum })
}

/// `(alpha/4) / (m-1)!`, an upper bound on `|Delta_alpha(m)|`; 0 on underflow.
pub fn delta_bound(alpha: f64, m: u64) -> Result<f64> {
    check_alpha(alpha)?;
    if m < 2 {
        return Err(Error::out_of_range("m", m, "m >= 2"));
    }
    Ok(over_factorial(alpha / 4.0, m - 1).unwrap_or(0.0))
}

/// `G_alpha(x_m)` with `zeta(alpha)` for `m = 2, ..., m_max`, ordered by `m`.
pub fn gronwall_sequence(
    alpha: f64,
    m_max: u64,
    variant: Variant,
    zeta_tol: f64,
) -> Result<Vec<ConvergenceRecord>> {
    check_alpha(alpha)?;
    if !(2..=MAX_M).contains(&m_max) {
        return Err(Error::out_of_range("m_max", m_max, "2 <= m_max <= 500"));
    }
    let z = zeta(alpha, zeta_tol)?;
    (2..=m_max)
        .into_par_iter()
        .map(|m| record(alpha, m, variant, &z))
        .collect()
}

fn record(alpha: f64, m: u64, variant: Variant, z: &ZetaValue) -> Result<ConvergenceRecord> {
    let g_value = g_from_factorization(alpha, &variant.factorization(m)?)?;
    let (lower_bound, delta) = match variant {
        Variant::Factorial => (
            Some(partial_sum_lower_bound(alpha, m)?),
            Some(delta_bound(alpha, m)?),
        ),
        _ => (None, None),
    };
    Ok(ConvergenceRecord {
        m,
        variant,
        g_value,
        zeta_value: z.value,
        zeta_tail_bound: z.tail_bound,
        gap: z.value - g_value,
        lower_bound,
        delta_bound: delta,
    })
}

/// Outcome of [`sandwich_check`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sandwich {
    pub holds: bool,
    /// `G_alpha(m!) - (sum_{k<=m} k^-alpha - delta_bound)`.
    pub slack_low: f64,
    /// `(zeta upper bracket) - G_alpha(m!)`.
    pub slack_high: f64,
    pub g_value: f64,
}

/// Checks `sum_{k<=m} k^-alpha - (alpha/4)/(m-1)! <= G_alpha(m!) <= zeta(alpha)`,
/// using the upper end of the zeta bracket.
pub fn sandwich_check(alpha: f64, m: u64, zeta_tol: f64) -> Result<Sandwich> {
    check_alpha(alpha)?;
    let z = zeta(alpha, zeta_tol)?;
    sandwich_check_with(alpha, m, &z)
}

/// [`sandwich_check`] against a precomputed zeta bracket.
pub fn sandwich_check_with(alpha: f64, m: u64, z: &ZetaValue) -> Result<Sandwich> {
    check_alpha(alpha)?;
    if z.alpha != alpha {
        return Err(Error::invalid(format!(
            "zeta bracket is for alpha = {}, not {alpha}",
            z.alpha
        )));
    }
    let db = delta_bound(alpha, m)?;
    let mut low = zeta_partial_sum(alpha, m) - db;
    if db == 0.0 {
        low = next_down(low);
    }
    let g_value = g_from_factorization(alpha, &factorial_factorization(m)?)?;
    let slack_low = g_value - low;
    let slack_high = z.upper() - g_value;
    Ok(Sandwich {
        holds: slack_low >= 0.0 && slack_high >= 0.0,
        slack_low,
        slack_high,
        g_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::g_alpha_brute;

    #[test]
    fn lower_bound_examples() {
        assert_eq!(partial_sum_lower_bound(2.0, 2).unwrap(), 0.90625);
        assert_eq!(partial_sum_lower_bound(3.0, 2).unwrap(), 0.72265625);
        let big = partial_sum_lower_bound(2.0, 60).unwrap();
        assert!((big - zeta_partial_sum(2.0, 60)).abs() < 1e-15);
        assert!(partial_sum_lower_bound(1.0, 5).is_err());
        assert!(partial_sum_lower_bound(2.0, 1).is_err());
    }

    #[test]
    fn lower_bound_after_underflow_is_one_ulp_low() {
        let m = 200;
        let plain = zeta_partial_sum(2.0, m);
        assert_eq!(partial_sum_lower_bound(2.0, m).unwrap(), next_down(plain));
    }

    #[test]
    fn delta_bound_examples() {
        assert!((delta_bound(2.0, 5).unwrap() - 0.5 / 24.0).abs() < 1e-17);
        assert_eq!(delta_bound(2.0, 2).unwrap(), 0.5);
        assert!(delta_bound(4.0, 21).unwrap() < 1e-18);
        assert_eq!(delta_bound(2.0, 200).unwrap(), 0.0);
        let via_log = delta_bound(2.0, 30).unwrap();
        let direct = 0.5 / (1..30).map(|k| k as f64).product::<f64>();
        assert!((via_log / direct - 1.0).abs() < 1e-13);
    }

    #[test]
    fn sequence_examples() {
        let rows = gronwall_sequence(2.0, 2, Variant::Factorial, DEFAULT_ZETA_TOL).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].g_value, 1.25);

        let rows = gronwall_sequence(2.0, 3, Variant::PrimorialPower, DEFAULT_ZETA_TOL).unwrap();
        let expected: f64 = [2.0f64, 3.0, 5.0]
            .iter()
            .map(|&p| (0..=3).map(|j| p.powi(-2 * j)).sum::<f64>())
            .product();
        let g = rows[1].g_value;
        assert!((g - expected).abs() < 1e-15);
        assert!((g - g_alpha_brute(2.0, 27_000).unwrap()).abs() < 1e-14);
        assert_eq!(rows[1].lower_bound, None);
    }

    #[test]
    fn sequence_validates_arguments() {
        assert!(gronwall_sequence(1.0, 10, Variant::Lcm, 1e-10).is_err());
        assert!(gronwall_sequence(2.0, 1, Variant::Lcm, 1e-10).is_err());
        assert!(gronwall_sequence(2.0, 501, Variant::Lcm, 1e-10).is_err());
    }

    #[test]
    fn sandwich_examples() {
        let s = sandwich_check(2.0, 2, DEFAULT_ZETA_TOL).unwrap();
        assert!(s.holds);
        assert!((s.slack_low - 0.5).abs() < 1e-15);
        assert!(sandwich_check(2.0, 6, DEFAULT_ZETA_TOL).unwrap().holds);
        let near_one = sandwich_check(1.0001, 3, DEFAULT_ZETA_TOL).unwrap();
        assert!(near_one.holds);
        assert!(near_one.slack_high > 9000.0);
    }

    #[test]
    fn variant_names_round_trip() {
        for v in Variant::ALL {
            assert_eq!(v.name().parse::<Variant>().unwrap(), v);
        }
        assert!("primorial".parse::<Variant>().is_err());
    }
}
