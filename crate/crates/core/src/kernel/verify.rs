use serde::Serialize;

use super::interval::{KernelInterval, Rational};
use super::testfn::TestFunction;
use super::{integrate_against, QuadratureResult};
use crate::error::{Error, Result};

/// Limit of `int_{eta1}^{eta2} phi_n f` as `n -> inf`: the sum of `f(m)`
/// over integers `eta1 <= m <= eta2`, with integer endpoints at half weight.
///
/// The sum runs over the integers inside the interval. Reading the lower
/// summation index as `floor(eta1)` would pull in the integer just below a
/// non-integer `eta1`, which lies outside the interval and carries no kernel
/// mass.
pub fn theorem2_rhs(f: &TestFunction, iv: &KernelInterval) -> f64 {
    let mut total = 0.0;
    for m in iv.integers() {
        total += f.eval(m as f64);
    }
    let mut endpoints = 0.0;
    if iv.endpoint1_integer() {
        endpoints += f.eval(iv.lo());
    }
    if iv.endpoint2_integer() {
        endpoints += f.eval(iv.hi());
    }
    total - endpoints / 2.0
}

/// One `n` of a kernel-limit verification run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem2Record {
    pub n: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
    pub error_estimate: f64,
    pub panels: u64,
    pub evaluations: u64,
}

fn check_schedule(schedule: &[u64]) -> Result<()> {
    if schedule.is_empty() {
        return Err(Error::invalid("n schedule is empty"));
    }
    if schedule[0] == 0 {
        return Err(Error::out_of_range("n", 0, "n >= 1"));
    }
    if schedule.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid("n schedule must be strictly increasing"));
    }
    Ok(())
}

/// Quadrature of the left side against the closed-form limit, for each `n`.
///
/// `f` must be continuous at every integer of the interval.
pub fn theorem2_verify(
    f: &TestFunction,
    iv: &KernelInterval,
    schedule: &[u64],
    tol: f64,
) -> Result<Vec<Theorem2Record>> {
    check_schedule(schedule)?;
    if let Some(m) = iv
        .integers()
        .find(|&m| !f.is_continuous_at(&Rational::from_integer(m)))
    {
        return Err(Error::invalid(format!(
            "test function `{}` is discontinuous at the integer {m}",
            f.label()
        )));
    }
    let rhs = theorem2_rhs(f, iv);
    schedule
        .iter()
        .map(|&n| {
            let q: QuadratureResult = integrate_against(n, f, iv, tol)?;
            Ok(Theorem2Record {
                n,
                lhs: q.value,
                rhs,
                gap: (q.value - rhs).abs(),
                error_estimate: q.error_estimate,
                panels: q.panels,
                evaluations: q.evaluations,
            })
        })
        .collect()
}

/// Whether the gap sequence is strictly decreasing from its maximum onward.
pub fn gaps_eventually_decreasing(gaps: &[f64]) -> bool {
    let Some(peak) = gaps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
    else {
        return true;
    };
    gaps[peak..].windows(2).all(|w| w[1] < w[0])
}

/// The two one-period integrals of the kernel lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LemmaVariant {
    /// `[-eta, 1 - eta]` with `0 < eta < 1`; the limit is `f(0)`.
    Interior(Rational),
    /// `[0, 1]`; the limit is `(f(0) + f(1)) / 2`.
    UnitInterval,
}

impl LemmaVariant {
    pub fn interval(&self) -> Result<KernelInterval> {
        match *self {
            LemmaVariant::Interior(eta) => {
                if !(eta > Rational::from_integer(0) && eta < Rational::from_integer(1)) {
                    return Err(Error::out_of_range("eta", eta, "0 < eta < 1"));
                }
                KernelInterval::new(-eta, Rational::from_integer(1) - eta)
            }
            LemmaVariant::UnitInterval => KernelInterval::from_integers(0, 1),
        }
    }

    pub fn target(&self, f: &TestFunction) -> f64 {
        match self {
            LemmaVariant::Interior(_) => f.eval(0.0),
            LemmaVariant::UnitInterval => (f.eval(0.0) + f.eval(1.0)) / 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LemmaRecord {
    pub n: u64,
    pub integral: f64,
    pub target: f64,
    pub gap: f64,
    pub error_estimate: f64,
}

/// One-period kernel integrals against `f` along `schedule`.
pub fn lemma32_verify(
    f: &TestFunction,
    variant: LemmaVariant,
    schedule: &[u64],
    tol: f64,
) -> Result<Vec<LemmaRecord>> {
    check_schedule(schedule)?;
    let iv = variant.interval()?;
    let zero = Rational::from_integer(0);
    let one = Rational::from_integer(1);
    let needs_one = matches!(variant, LemmaVariant::UnitInterval);
    if !f.is_continuous_at(&zero) || (needs_one && !f.is_continuous_at(&one)) {
        return Err(Error::invalid(format!(
            "test function `{}` must be continuous at the kernel peaks",
            f.label()
        )));
    }
    let target = variant.target(f);
    schedule
        .iter()
        .map(|&n| {
            let q = integrate_against(n, f, &iv, tol)?;
            Ok(LemmaRecord {
                n,
                integral: q.value,
                target,
                gap: (q.value - target).abs(),
                error_estimate: q.error_estimate,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> TestFunction {
        TestFunction::new("x^2", |x| x * x).with_abs_bound(16.0)
    }

    #[test]
    fn rhs_examples() {
        let one = TestFunction::constant(1.0);
        assert_eq!(
            theorem2_rhs(&one, &KernelInterval::parse("0", "1").unwrap()),
            1.0
        );
        assert_eq!(
            theorem2_rhs(&square(), &KernelInterval::parse("1/2", "7/2").unwrap()),
            14.0
        );
        let id = TestFunction::new("x", |x| x);
        assert_eq!(
            theorem2_rhs(&id, &KernelInterval::parse("0", "2").unwrap()),
            2.0
        );
    }

    #[test]
    fn rhs_of_degenerate_interval_is_zero() {
        let f = TestFunction::new("x+3", |x| x + 3.0);
        assert_eq!(
            theorem2_rhs(&f, &KernelInterval::parse("2", "2").unwrap()),
            0.0
        );
        assert_eq!(
            theorem2_rhs(&f, &KernelInterval::parse("1/3", "1/2").unwrap()),
            0.0
        );
    }

    #[test]
    fn rhs_skips_integer_below_non_integer_start() {
        // floor(1/2) = 0 is outside [1/2, 3/2]
        let f = TestFunction::new("x+10", |x| x + 10.0);
        assert_eq!(
            theorem2_rhs(&f, &KernelInterval::parse("1/2", "3/2").unwrap()),
            11.0
        );
    }

    #[test]
    fn schedules_are_validated() {
        let iv = KernelInterval::parse("0", "1").unwrap();
        let f = TestFunction::constant(1.0);
        assert!(theorem2_verify(&f, &iv, &[], 1e-8).is_err());
        assert!(theorem2_verify(&f, &iv, &[10, 10], 1e-8).is_err());
        assert!(theorem2_verify(&f, &iv, &[0, 10], 1e-8).is_err());
    }

    #[test]
    fn discontinuity_at_an_integer_is_rejected() {
        let iv = KernelInterval::parse("0", "3").unwrap();
        let step = TestFunction::new("step(2)", |x| if x < 2.0 { 0.0 } else { 1.0 })
            .with_discontinuity(Rational::from_integer(2));
        assert!(theorem2_verify(&step, &iv, &[10], 1e-8).is_err());
    }

    #[test]
    fn eventual_decrease() {
        assert!(gaps_eventually_decreasing(&[0.1, 0.5, 0.2, 0.01]));
        assert!(!gaps_eventually_decreasing(&[0.5, 0.2, 0.3]));
        assert!(gaps_eventually_decreasing(&[]));
    }

    #[test]
    fn lemma_variant_intervals() {
        let half = Rational::new(1, 2);
        let iv = LemmaVariant::Interior(half).interval().unwrap();
        assert_eq!(iv.eta1(), Rational::new(-1, 2));
        assert_eq!(iv.eta2(), Rational::new(1, 2));
        assert!(LemmaVariant::Interior(Rational::from_integer(1))
            .interval()
            .is_err());
        let id = TestFunction::new("x", |x| x);
        assert_eq!(LemmaVariant::UnitInterval.target(&id), 0.5);
    }

    #[test]
    fn lemma_constant_interior() {
        let c = TestFunction::constant(3.0);
        let rows = lemma32_verify(
            &c,
            LemmaVariant::Interior(Rational::new(1, 2)),
            &[10, 1000],
            1e-10,
        )
        .unwrap();
        assert_eq!(rows[0].target, 3.0);
        assert!(rows[1].gap < rows[0].gap);
    }
}
