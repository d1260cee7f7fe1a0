//! Smooth approximants of the divisor function.
//!
//! For `alpha > 0`, `M > 1` and `x` in `[0, M]`,
//!
//! ```text
//! C_{alpha,n}(M; x) = sum_{k=1}^{floor(M)} k^alpha cos^{2n}(pi x / k)
//! ```
//!
//! Each term equals `k^alpha` when `k` divides the integer `x` and decays
//! geometrically in `n` otherwise, so `C` is non-increasing in `n` and
//! converges to `sigma_alpha(x)` (taken as 0 off the integers).

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::logpow::{fold_unit, ln_cos_pow};
use crate::numtheory::{sigma_exact, Factorization};
use crate::sum::pairwise;

/// Largest `n` that [`converge_to_sigma`] will try.
pub const MAX_N: u64 = 1 << 60;

/// Integers up to this size are exact in `f64`.
const EXACT_INT_LIMIT: f64 = 9_007_199_254_740_992.0;

/// Parameters `(alpha, n, M, x)` of one approximant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproximantParams {
    alpha: f64,
    n: u64,
    cutoff: f64,
    x: f64,
}

impl ApproximantParams {
    /// Checks `alpha > 0`, `n >= 1`, `M > 1` and `0 <= x <= M`.
    pub fn new(alpha: f64, n: u64, cutoff: f64, x: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::out_of_range("alpha", alpha, "alpha > 0"));
        }
        if n == 0 {
            return Err(Error::out_of_range("n", n, "n >= 1"));
        }
        if !(cutoff > 1.0 && cutoff < EXACT_INT_LIMIT) {
            return Err(Error::out_of_range("M", cutoff, "1 < M < 2^53"));
        }
        if !(0.0..=cutoff).contains(&x) {
            return Err(Error::out_of_range("x", x, "0 <= x <= M"));
        }
        Ok(Self {
            alpha,
            n,
            cutoff,
            x,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The summation cutoff `M`.
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn with_n(self, n: u64) -> Result<Self> {
        Self::new(self.alpha, n, self.cutoff, self.x)
    }

    /// Largest summation index, `floor(M)`.
    pub fn last_index(&self) -> u64 {
        self.cutoff.floor() as u64
    }

    /// `x` as an integer, when it is one.
    pub fn integer_x(&self) -> Option<u64> {
        as_exact_integer(self.x)
    }
}

fn as_exact_integer(v: f64) -> Option<u64> {
    (v >= 0.0 && v.fract() == 0.0 && v < EXACT_INT_LIMIT).then_some(v as u64)
}

fn scaled_cos_power(alpha: f64, n: u64, t: f64, distance: f64) -> f64 {
    match ln_cos_pow(n, distance) {
        Some(0.0) => t.powf(alpha),
        Some(l) => (alpha * t.ln() + l).exp(),
        None => 0.0,
    }
}

/// `k^alpha cos^{2n}(pi x / k)` for integer `x` given only through its residue
/// `x mod t`.
fn term_from_residue(alpha: f64, n: u64, residue: u64, t: u64) -> f64 {
    let near = residue.min(t - residue);
    if near == 0 {
        return (t as f64).powf(alpha);
    }
    if 2 * near == t {
        return 0.0;
    }
    scaled_cos_power(alpha, n, t as f64, near as f64 / t as f64)
}

/// `t^alpha cos^{2n}(pi x / t)` for integer `x`, `t`, with `x` reduced modulo
/// `t` in integer arithmetic first.
pub fn f_n_term_int(alpha: f64, n: u64, x: u64, t: u64) -> f64 {
    if x == 0 || t == 0 {
        return 0.0;
    }
    term_from_residue(alpha, n, x % t, t)
}

/// [`f_n_term_int`] for an `x` known only by its factorization, e.g. `x = m!`.
pub fn f_n_term_factored(alpha: f64, n: u64, x: &Factorization, t: u64) -> f64 {
    if t == 0 {
        return 0.0;
    }
    term_from_residue(alpha, n, x.rem_u64(t), t)
}

/// The summand `f_n(t) = t^alpha cos^{2n}(pi x / t)`, with `f_n = 0` when
/// `t = 0` or `x = 0`.
///
/// Evaluated in the log domain; a `cos^{2n}` factor below the smallest
/// normal float is flushed to exactly 0. When `x` and `t` are both integers
/// the quotient `x / t` is reduced exactly, so every divisor term is exactly
/// `t^alpha`.
pub fn f_n_term(alpha: f64, n: u64, x: f64, t: f64) -> f64 {
    if x == 0.0 || t == 0.0 {
        return 0.0;
    }
    if let (Some(xi), Some(ti)) = (as_exact_integer(x), as_exact_integer(t)) {
        return f_n_term_int(alpha, n, xi, ti);
    }
    scaled_cos_power(alpha, n, t, fold_unit(x / t))
}

fn terms(p: &ApproximantParams) -> Vec<f64> {
    let last = p.last_index();
    match p.integer_x() {
        Some(x) => (1..=last)
            .into_par_iter()
            .map(|k| f_n_term_int(p.alpha, p.n, x, k))
            .collect(),
        None => (1..=last)
            .into_par_iter()
            .map(|k| f_n_term(p.alpha, p.n, p.x, k as f64))
            .collect(),
    }
}

/// `C_{alpha,n}(M; x)`.
///
/// Terms are produced in parallel and reduced by fixed-shape pairwise
/// summation, so the result does not depend on the thread count.
pub fn approximant_c(p: &ApproximantParams) -> f64 {
    pairwise(&terms(p))
}

fn positive_integer_x(p: &ApproximantParams) -> Result<u64> {
    p.integer_x().filter(|&x| x >= 1).ok_or_else(|| {
        Error::invalid(format!(
            "tail bound needs a positive integer x, got {}",
            p.x
        ))
    })
}

/// Off-divisor part and rounding allowance of the tail bound.
fn tail_parts(p: &ApproximantParams) -> Result<(f64, f64)> {
    let x = positive_integer_x(p)?;
    let last = p.last_index();
    let (off_divisors, all): (Vec<f64>, Vec<f64>) = (1..=last)
        .into_par_iter()
        .map(|k| {
            let t = f_n_term_int(p.alpha, p.n, x, k);
            (if x % k == 0 { 0.0 } else { t }, t)
        })
        .unzip();
    // pairwise depth, leaf length, and a few ulps per log-domain term
    let depth = 64 - last.leading_zeros() as u64;
    let ulps = (depth + 16 + 8) as f64;
    Ok((
        pairwise(&off_divisors),
        ulps * f64::EPSILON * pairwise(&all),
    ))
}

/// `sum_{k <= M, k does not divide x} k^alpha cos^{2n}(pi x / k)`, which is
/// exactly `C_{alpha,n}(M; x) - sigma_alpha(x)` in real arithmetic.
pub fn approximant_off_divisor_sum(p: &ApproximantParams) -> Result<f64> {
    positive_integer_x(p)?;
    Ok(tail_parts(p)?.0)
}

/// Upper bound on `C_{alpha,n}(M; x) - sigma_alpha(x)` for the computed `C`.
///
/// The off-divisor sum is non-increasing in `n`. The bound adds an allowance
/// for the rounding in the computed `C`, so that
/// `approximant_c(p) <= sigma_alpha(x) + bound` holds for the floats too.
pub fn approximant_tail_bound(p: &ApproximantParams) -> Result<f64> {
    let (off, allowance) = tail_parts(p)?;
    Ok(off + allowance)
}

/// One evaluation in a convergence run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ApproxStep {
    pub n: u64,
    pub value: f64,
    /// `None` off the integers, where no divisor structure exists.
    pub tail_bound: Option<f64>,
}

/// Result of [`converge_to_sigma`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SigmaConvergence {
    pub value: f64,
    pub n_used: u64,
    pub tail_bound: f64,
    pub steps: Vec<ApproxStep>,
}

/// Doubles `n` from 1 until the tail bound is at most `tol`, so that
/// `|C_{alpha,n}(M; x) - sigma_alpha(x)| <= tol`.
pub fn converge_to_sigma(alpha: f64, x: u64, cutoff: f64, tol: f64) -> Result<SigmaConvergence> {
    if !(tol > 0.0) {
        return Err(Error::out_of_range("tol", tol, "tol > 0"));
    }
    if x == 0 {
        return Err(Error::out_of_range("x", x, "x >= 1"));
    }
    if cutoff < x as f64 {
        return Err(Error::out_of_range("M", cutoff, "M >= x"));
    }
    let base = ApproximantParams::new(alpha, 1, cutoff, x as f64)?;
    let mut steps = Vec::new();
    let mut n = 1u64;
    loop {
        let p = base.with_n(n)?;
        let value = approximant_c(&p);
        let (off, allowance) = tail_parts(&p)?;
        let bound = off + allowance;
        steps.push(ApproxStep {
            n,
            value,
            tail_bound: Some(bound),
        });
        if bound <= tol {
            return Ok(SigmaConvergence {
                value,
                n_used: n,
                tail_bound: bound,
                steps,
            });
        }
        if off == 0.0 {
            return Err(Error::ToleranceUnachievable {
                tol,
                reason: format!("rounding allowance {allowance:e} of the computed sum exceeds it"),
            });
        }
        if n >= MAX_N {
            return Err(Error::IterationCap(format!(
                "tail bound {bound:e} still above {tol:e} at n = 2^60"
            )));
        }
        n *= 2;
    }
}

/// Approximant values along an explicit `n` schedule, for any admissible `x`.
pub fn approximant_sequence(
    alpha: f64,
    x: f64,
    cutoff: f64,
    schedule: &[u64],
) -> Result<Vec<ApproxStep>> {
    let base = ApproximantParams::new(alpha, 1, cutoff, x)?;
    let integral = base.integer_x().is_some_and(|x| x >= 1);
    schedule
        .iter()
        .map(|&n| {
            let p = base.with_n(n)?;
            let tail_bound = if integral {
                Some(approximant_tail_bound(&p)?)
            } else {
                None
            };
            Ok(ApproxStep {
                n,
                value: approximant_c(&p),
                tail_bound,
            })
        })
        .collect()
}

/// The limit of the approximants: `sigma_alpha(x)` at positive integers and
/// 0 everywhere else.
pub fn limit_value(alpha: f64, x: f64) -> Result<f64> {
    match as_exact_integer(x) {
        Some(0) | None => Ok(0.0),
        Some(xi) => sigma_exact(alpha, xi),
    }
}
