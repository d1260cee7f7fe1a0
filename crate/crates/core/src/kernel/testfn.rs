use std::fmt;
use std::sync::Arc;

use super::interval::{KernelInterval, Rational};

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A bounded real test function paired with the kernel.
///
/// Carries an optional bound on `|f|` (used to certify skipped quadrature
/// panels) and the finite set of points where `f` may be discontinuous.
/// Everywhere else `f` is asserted continuous.
#[derive(Clone)]
pub struct TestFunction {
    label: String,
    eval: Evaluator,
    abs_bound: Option<f64>,
    discontinuities: Vec<Rational>,
}

impl TestFunction {
    pub fn new(label: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            label: label.into(),
            eval: Arc::new(f),
            abs_bound: None,
            discontinuities: Vec::new(),
        }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(format!("{c}"), move |_| c).with_abs_bound(c.abs())
    }

    /// Declares `sup |f| <= bound` on every interval the function is used on.
    pub fn with_abs_bound(mut self, bound: f64) -> Self {
        self.abs_bound = Some(bound);
        self
    }

    pub fn with_discontinuity(mut self, at: Rational) -> Self {
        self.discontinuities.push(at);
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn abs_bound(&self) -> Option<f64> {
        self.abs_bound
    }

    pub fn discontinuities(&self) -> &[Rational] {
        &self.discontinuities
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    pub fn is_continuous_at(&self, r: &Rational) -> bool {
        !self.discontinuities.contains(r)
    }

    /// Whether `f` is continuous at every integer of `iv`, endpoints included.
    pub fn continuous_at_integers(&self, iv: &KernelInterval) -> bool {
        iv.integers()
            .all(|m| self.is_continuous_at(&Rational::from_integer(m)))
    }

    /// `a f + b g`.
    pub fn linear_combination(a: f64, f: &TestFunction, b: f64, g: &TestFunction) -> Self {
        let (fe, ge) = (f.eval.clone(), g.eval.clone());
        let mut discontinuities = f.discontinuities.clone();
        discontinuities.extend(g.discontinuities.iter().copied());
        Self {
            label: format!("{a}*({}) + {b}*({})", f.label, g.label),
            eval: Arc::new(move |x| a * fe(x) + b * ge(x)),
            abs_bound: f
                .abs_bound
                .zip(g.abs_bound)
                .map(|(bf, bg)| a.abs() * bf + b.abs() * bg),
            discontinuities,
        }
    }
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("label", &self.label)
            .field("abs_bound", &self.abs_bound)
            .field("discontinuities", &self.discontinuities)
            .finish()
    }
}
