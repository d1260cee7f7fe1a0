//! The delta-like kernel `phi_n(x) = sqrt(n pi) cos^{2n}(pi x)`.
//!
//! `phi_n` peaks at every integer with width of order `1/sqrt(n)`. Over one
//! period its mass is
//!
//! ```text
//! I_n = sqrt(n) Gamma(n + 1/2) / Gamma(n + 1),
//! ```
//!
//! which increases to 1 with `1 - I_n ~ 1/(8n)`. Paired with a test function
//! `f` that is continuous near the integers,
//! `int_{eta1}^{eta2} phi_n f` tends to the sum of `f` over the integers of
//! the interval, with integer endpoints counted at half weight.
//!
//! This module provides the kernel, its exact normalization, the two
//! delta-sequence conditions as checkable predicates, and a quadrature for
//! `int phi_n f` whose panels follow the kernel's peaks.

mod interval;
mod quadrature;
mod testfn;
mod verify;

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::logpow::{fold_unit, ln_cos_pow, ln_cos_sq};

pub use interval::{parse_rational, KernelInterval, Rational};
pub use quadrature::{
    gauss_legendre_rule, integrate_panels, QuadratureResult, GL_ORDER, PANEL_CAP,
};
pub use testfn::TestFunction;
pub use verify::{
    gaps_eventually_decreasing, lemma32_verify, theorem2_rhs, theorem2_verify, LemmaRecord,
    LemmaVariant, Theorem2Record,
};

/// Half-width, in units of `1/sqrt(n)`, of the quadrature window around
/// each integer.
pub const WINDOW_SCALE: f64 = 6.0;

/// Fraction of the tolerance that skipped inter-peak regions may consume.
const SKIP_BUDGET: f64 = 1e-3;

/// `sqrt(n pi) cos^{2n}(pi x)`.
///
/// Computed from `|x|` reduced to its distance from the nearest integer, so
/// the kernel is exactly even and symmetric under `x -> 1 - x` up to the
/// reduction's rounding.
pub fn phi_n(n: u64, x: f64) -> f64 {
    let peak = (n as f64 * PI).sqrt();
    match ln_cos_pow(n, fold_unit(x.abs())) {
        Some(l) => peak * l.exp(),
        None => 0.0,
    }
}

/// `ln phi_n(x)`; `-inf` where `cos(pi x) = 0`. Never underflows.
pub fn ln_phi_n(n: u64, x: f64) -> f64 {
    0.5 * (n as f64 * PI).ln() + n as f64 * ln_cos_sq(fold_unit(x.abs()))
}

/// `I_n` together with its deficit `1 - I_n`, both to full relative accuracy.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Normalization {
    pub n: u64,
    pub value: f64,
    pub deficit: f64,
}

impl Normalization {
    /// `n (1 - I_n)`, which tends to `1/8`.
    pub fn scaled_deficit(&self) -> f64 {
        self.n as f64 * self.deficit
    }
}

/// `I_n` for every requested `n`, from a single pass of the Wallis-type
/// recurrence
///
/// ```text
/// I_1 = sqrt(pi) / 2,   I_n = I_{n-1} (2n-1)/(2n) sqrt(n/(n-1)).
/// ```
///
/// The step factor squares to `1 + 1/(4n(n-1))`, so the recurrence is run on
/// `ln I_n` with strictly positive increments `ln_1p(1/(4n(n-1)))/2`.
pub fn normalization_table(ns: &[u64]) -> Result<Vec<Normalization>> {
    if ns.contains(&0) {
        return Err(Error::out_of_range("n", 0, "n >= 1"));
    }
    let Some(&max_n) = ns.iter().max() else {
        return Ok(Vec::new());
    };
    let mut order: Vec<usize> = (0..ns.len()).collect();
    order.sort_by_key(|&i| ns[i]);

    let mut out = vec![
        Normalization {
            n: 0,
            value: 0.0,
            deficit: 0.0
        };
        ns.len()
    ];
    let mut log_i = crate::sum::Compensated::new();
    log_i.add(0.5 * PI.ln());
    log_i.add(-std::f64::consts::LN_2);
    let mut next = order.iter().peekable();
    for k in 1..=max_n {
        if k > 1 {
            let kf = k as f64;
            log_i.add(0.5 * (1.0 / (4.0 * kf * (kf - 1.0))).ln_1p());
        }
        while let Some(&&i) = next.peek() {
            if ns[i] != k {
                break;
            }
            let l = log_i.value();
            out[i] = Normalization {
                n: k,
                value: l.exp(),
                deficit: -l.exp_m1(),
            };
            next.next();
        }
    }
    Ok(out)
}

/// `I_n = sqrt(n pi) int_{-1/2}^{1/2} cos^{2n}(pi x) dx`.
pub fn normalization_exact(n: u64) -> Result<f64> {
    Ok(normalization(n)?.value)
}

pub fn normalization(n: u64) -> Result<Normalization> {
    Ok(normalization_table(&[n])?[0])
}

/// One row of the mass-concentration check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TailMass {
    pub n: u64,
    pub delta: f64,
    /// `int_{delta < |x| < 1/2} phi_n`; may underflow to 0, see `ln_tail_mass`.
    pub tail_mass: f64,
    pub ln_tail_mass: f64,
    /// `sqrt(n pi) (1 - 4 delta^2)^n`, which bounds `phi_n` beyond `delta`.
    pub envelope: f64,
    pub ln_envelope: f64,
    pub error_estimate: f64,
}

impl TailMass {
    /// Whether the quadrature value sits below the envelope, with relative
    /// slack `1e-8`.
    pub fn within_envelope(&self) -> bool {
        self.ln_tail_mass <= self.ln_envelope + 1e-8f64.ln_1p()
    }
}

/// Relative quadrature tolerance for the tail-mass integrals.
const TAIL_REL_TOL: f64 = 1e-10;

/// Mass of `phi_n` outside `(-delta, delta)` within one period, for each `n`.
///
/// The integral is evaluated on the scale of `phi_n(delta)`, so values far
/// below the float range still have a finite, accurate `ln_tail_mass`.
pub fn check_condition_a(ns: &[u64], delta: f64) -> Result<Vec<TailMass>> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(Error::out_of_range("delta", delta, "0 < delta < 1/2"));
    }
    ns.iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::out_of_range("n", n, "n >= 1"));
            }
            let nf = n as f64;
            let ln_at_delta = nf * ln_cos_sq(delta);
            let scaled = move |x: f64| (nf * ln_cos_sq(fold_unit(x)) - ln_at_delta).exp();
            // scaled integrand is at most 1, so the integral is at most 1/2 - delta
            let width = 0.5 - delta;
            let seeds = tail_seeds(nf, delta);
            let coarse = integrate_panels(&scaled, &seeds, 1e-6 * width, 0.0)?;
            let tol = (TAIL_REL_TOL * coarse.value.abs()).max(1e-300);
            let q = integrate_panels(&scaled, &seeds, tol, 0.0)?;
            let ln_scale = std::f64::consts::LN_2 + 0.5 * (nf * PI).ln() + ln_at_delta;
            let ln_tail_mass = ln_scale + q.value.ln();
            let ln_envelope = 0.5 * (nf * PI).ln() + nf * (-4.0 * delta * delta).ln_1p();
            Ok(TailMass {
                n,
                delta,
                tail_mass: ln_tail_mass.exp(),
                ln_tail_mass,
                envelope: ln_envelope.exp(),
                ln_envelope,
                error_estimate: q.error_estimate * ln_scale.exp(),
            })
        })
        .collect()
}

/// Panels on `[delta, 1/2]` growing geometrically from the decay length of
/// the scaled integrand at `delta`, where it falls like `exp(-2 pi n tan(pi delta) t)`.
fn tail_seeds(n: f64, delta: f64) -> Vec<(f64, f64)> {
    let scale = 1.0 / (2.0 * PI * n * (PI * delta).tan());
    let mut seeds = Vec::new();
    let mut lo = delta;
    let mut len = scale;
    while lo + 2.0 * len < 0.5 {
        seeds.push((lo, lo + len));
        lo += len;
        len *= 2.0;
    }
    let mid = 0.5 * (lo + 0.5);
    seeds.push((lo, mid));
    seeds.push((mid, 0.5));
    seeds
}

/// Normalization rows for the asymptotic-unit-mass condition.
pub fn check_condition_b(ns: &[u64]) -> Result<Vec<Normalization>> {
    normalization_table(ns)
}

/// Window half-width around each integer: `min(1/2, 6/sqrt(n))`.
pub fn window_half_width(n: u64) -> f64 {
    (WINDOW_SCALE / (n as f64).sqrt()).min(0.5)
}

/// Upper bound of `phi_n` at distance at least `w` from every integer.
fn envelope_beyond(n: u64, w: f64) -> f64 {
    let nf = n as f64;
    (0.5 * (nf * PI).ln() + nf * (-4.0 * w * w).ln_1p()).exp()
}

type Segment = (f64, f64);

/// Panels for `[a, b]`: windows around each nearby integer, split at the
/// integer itself, and the gaps between windows.
fn layout(n: u64, a: f64, b: f64) -> (Vec<Segment>, Vec<Segment>) {
    let w = window_half_width(n);
    let mut windows = Vec::new();
    let mut gaps = Vec::new();
    let mut cursor = a;
    let first = (a - w).ceil() as i64;
    let last = (b + w).floor() as i64;
    for m in first..=last {
        let c = m as f64;
        let lo = (c - w).max(a);
        let hi = (c + w).min(b);
        if hi <= lo {
            continue;
        }
        if lo > cursor {
            gaps.push((cursor, lo));
        }
        let lo = lo.max(cursor);
        if c > lo && c < hi {
            windows.push((lo, c));
            windows.push((c, hi));
        } else {
            windows.push((lo, hi));
        }
        cursor = hi;
    }
    if cursor < b {
        gaps.push((cursor, b));
    }
    (windows, gaps)
}

/// `sqrt(n pi) int_{eta1}^{eta2} cos^{2n}(pi x) f(x) dx` to an absolute error
/// estimate of at most `tol`.
///
/// Panels start as windows of half-width `min(1/2, 6/sqrt(n))` around every
/// integer. Between windows the kernel is below
/// `sqrt(n pi)(1 - 4w^2)^n`; when `f` declares a bound and that envelope
/// makes a gap's contribution negligible, the gap is skipped and its bound
/// is charged to the error estimate.
pub fn integrate_against(
    n: u64,
    f: &TestFunction,
    iv: &KernelInterval,
    tol: f64,
) -> Result<QuadratureResult> {
    if n == 0 {
        return Err(Error::out_of_range("n", n, "n >= 1"));
    }
    integrate_kernel_range(n, f, iv.lo(), iv.hi(), tol)
}

/// [`integrate_against`] over a float range, without endpoint classification.
pub fn integrate_kernel_range(
    n: u64,
    f: &TestFunction,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    if !(tol > 0.0) {
        return Err(Error::out_of_range("tol", tol, "tol > 0"));
    }
    if !(a <= b) {
        return Err(Error::invalid(format!("reversed range [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            panels: 1,
            evaluations: 0,
        });
    }
    let (mut seeds, gaps) = layout(n, a, b);
    let envelope = envelope_beyond(n, window_half_width(n));
    let mut skipped = 0.0;
    let mut skip_budget = SKIP_BUDGET * tol;
    for (lo, hi) in gaps {
        let bound = f.abs_bound().map(|m| m * envelope * (hi - lo));
        match bound {
            Some(e) if e <= skip_budget => {
                skipped += e;
                skip_budget -= e;
            }
            _ => seeds.push((lo, hi)),
        }
    }
    seeds.sort_by(|p, q| p.0.total_cmp(&q.0));
    let integrand = |x: f64| {
        let k = phi_n(n, x);
        if k == 0.0 {
            0.0
        } else {
            k * f.eval(x)
        }
    };
    integrate_panels(&integrand, &seeds, tol, skipped)
}
