//! The built-in test-function expressions accepted by `theorem2`:
//! constants, `x`, `x^k`, `cos(a*pi*x)` and `step(x0)`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::kernel::{parse_rational, KernelInterval, Rational, TestFunction};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Constant(f64),
    /// `x^k`; `x` itself is `Power(1)`.
    Power(u32),
    /// `cos(a pi x)`
    Cosine(f64),
    /// 0 below `x0`, 1 from `x0` on.
    Step(Rational),
}

fn parse_number(s: &str) -> Option<f64> {
    if s.contains('/') {
        return parse_rational(s)
            .ok()
            .map(|r| *r.numer() as f64 / *r.denom() as f64);
    }
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}

impl Expr {
    pub fn parse(src: &str) -> Result<Self> {
        let s: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || {
            Error::invalid(format!("unsupported function `{src}`; expected a constant, x, x^k, cos(a*pi*x) or step(x0)"))
        };
        if s == "x" {
            return Ok(Expr::Power(1));
        }
        if let Some(k) = s.strip_prefix("x^") {
            return k.parse::<u32>().map(Expr::Power).map_err(|_| bad());
        }
        if let Some(inner) = s.strip_prefix("cos(").and_then(|r| r.strip_suffix(')')) {
            let coef = inner.strip_suffix("pi*x").ok_or_else(bad)?;
            let a = match coef {
                "" => 1.0,
                "-" => -1.0,
                c => parse_number(c.strip_suffix('*').ok_or_else(bad)?).ok_or_else(bad)?,
            };
            return Ok(Expr::Cosine(a));
        }
        if let Some(inner) = s.strip_prefix("step(").and_then(|r| r.strip_suffix(')')) {
            return Ok(Expr::Step(parse_rational(inner)?));
        }
        parse_number(&s).map(Expr::Constant).ok_or_else(bad)
    }

    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Expr::Constant(c) => c,
            Expr::Power(k) => x.powi(k as i32),
            Expr::Cosine(a) => (a * PI * x).cos(),
            Expr::Step(x0) => {
                if x < *x0.numer() as f64 / *x0.denom() as f64 {
                    0.0
                } else {
                    1.0
                }
            }
        }
    }

    /// `sup |f|` over `iv`.
    pub fn abs_bound(&self, iv: &KernelInterval) -> f64 {
        match *self {
            Expr::Constant(c) => c.abs(),
            Expr::Power(k) => iv.lo().abs().max(iv.hi().abs()).powi(k as i32),
            Expr::Cosine(_) | Expr::Step(_) => 1.0,
        }
    }

    pub fn to_test_function(&self, label: &str, iv: &KernelInterval) -> TestFunction {
        let e = self.clone();
        let f = TestFunction::new(label, move |x| e.eval(x)).with_abs_bound(self.abs_bound(iv));
        match *self {
            Expr::Step(x0) => f.with_discontinuity(x0),
            _ => f,
        }
    }
}
