//! Global adaptive Gauss-Legendre quadrature.
//!
//! Each panel is integrated with the fixed 32-point rule on the whole panel
//! and on its two halves. The halves' sum is the panel value and the
//! difference between the two levels is the panel's error estimate. The
//! panel with the largest estimate is bisected until the estimates sum to at
//! most the tolerance. Ties are broken by position, and final values are
//! reduced in ascending position order, so results are deterministic.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::pairwise;

/// Points per Gauss-Legendre panel.
pub const GL_ORDER: usize = 32;

/// Largest number of leaf panels before giving up.
pub const PANEL_CAP: usize = 1_000_000;

/// Outcome of one quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels: u64,
    pub evaluations: u64,
}

/// Nodes and weights of the `GL_ORDER`-point rule on `[-1, 1]`, ascending.
pub fn gauss_legendre_rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| legendre_rule(GL_ORDER))
}

fn legendre_rule(order: usize) -> Vec<(f64, f64)> {
    let n = order as f64;
    let mut rule = vec![(0.0, 0.0); order];
    for i in 0..order.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=order {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() <= 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = (-x, w);
        rule[order - 1 - i] = (x, w);
    }
    rule
}

fn gl_panel<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> f64 {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let s: f64 = gauss_legendre_rule()
        .iter()
        .map(|&(x, w)| w * f(mid + half * x))
        .sum();
    half * s
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    error: f64,
}

impl Panel {
    fn evaluate<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, whole: f64) -> Self {
        let mid = 0.5 * (a + b);
        let left = gl_panel(f, a, mid);
        let right = gl_panel(f, mid, b);
        Panel {
            a,
            b,
            left,
            right,
            error: ((left + right) - whole).abs(),
        }
    }

    fn value(&self) -> f64 {
        self.left + self.right
    }

    fn splittable(&self) -> bool {
        let mid = 0.5 * (self.a + self.b);
        mid > self.a
            && mid < self.b
            && (self.b - self.a) > 4.0 * f64::EPSILON * self.a.abs().max(self.b.abs())
    }
}

struct Ranked(Panel);

impl PartialEq for Ranked {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ranked {}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .error
            .total_cmp(&other.0.error)
            .then_with(|| other.0.a.total_cmp(&self.0.a))
    }
}

/// Integrates `f` over the union of the `seeds` panels to an absolute error
/// estimate of at most `tol`.
///
/// `certified_extra` is an already-certified error contribution from parts
/// of the domain that were not integrated; it counts against `tol` and is
/// reported in `error_estimate`.
pub fn integrate_panels<F>(
    f: &F,
    seeds: &[(f64, f64)],
    tol: f64,
    certified_extra: f64,
) -> Result<QuadratureResult>
where
    F: Fn(f64) -> f64 + Sync + ?Sized,
{
    if !(tol > 0.0) {
        return Err(Error::out_of_range("tol", tol, "tol > 0"));
    }
    let budget = tol - certified_extra;
    if !(budget > 0.0) {
        return Err(Error::ToleranceUnachievable {
            tol,
            reason: format!("skipped regions already contribute {certified_extra:e}"),
        });
    }
    let initial: Vec<Panel> = seeds
        .par_iter()
        .filter(|(a, b)| b > a)
        .map(|&(a, b)| Panel::evaluate(f, a, b, gl_panel(f, a, b)))
        .collect();
    let mut evaluations = (3 * GL_ORDER * initial.len()) as u64;

    let mut done: Vec<Panel> = Vec::new();
    let mut heap: BinaryHeap<Ranked> = initial.into_iter().map(Ranked).collect();
    let mut total: f64 = heap.iter().map(|r| r.0.error).sum();
    let mut since_resum = 0usize;

    while total > budget {
        let Some(Ranked(worst)) = heap.pop() else {
            break;
        };
        if !worst.splittable() {
            done.push(worst);
            continue;
        }
        if heap.len() + done.len() + 2 > PANEL_CAP {
            return Err(Error::ToleranceUnachievable {
                tol,
                reason: format!("panel cap {PANEL_CAP} reached with error estimate {total:e}"),
            });
        }
        let mid = 0.5 * (worst.a + worst.b);
        let left = Panel::evaluate(f, worst.a, mid, worst.left);
        let right = Panel::evaluate(f, mid, worst.b, worst.right);
        evaluations += (4 * GL_ORDER) as u64;
        total += left.error + right.error - worst.error;
        heap.push(Ranked(left));
        heap.push(Ranked(right));

        since_resum += 1;
        if since_resum == 256 || total <= budget {
            total = heap.iter().map(|r| r.0.error).sum::<f64>()
                + done.iter().map(|p| p.error).sum::<f64>();
            since_resum = 0;
        }
    }

    done.extend(heap.into_iter().map(|r| r.0));
    let error: f64 = done.iter().map(|p| p.error).sum();
    if error > budget {
        return Err(Error::ToleranceUnachievable {
            tol,
            reason: format!("panels cannot be refined further; estimate {error:e}"),
        });
    }
    done.sort_by(|p, q| p.a.total_cmp(&q.a));
    let values: Vec<f64> = done.iter().map(Panel::value).collect();
    Ok(QuadratureResult {
        value: pairwise(&values),
        error_estimate: error + certified_extra,
        panels: done.len() as u64,
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_symmetric_and_normalized() {
        let rule = gauss_legendre_rule();
        assert_eq!(rule.len(), GL_ORDER);
        let wsum: f64 = rule.iter().map(|&(_, w)| w).sum();
        assert!((wsum - 2.0).abs() < 1e-14);
        for i in 0..GL_ORDER {
            let (x, w) = rule[i];
            let (y, v) = rule[GL_ORDER - 1 - i];
            assert_eq!(x, -y);
            assert_eq!(w, v);
            if i > 0 {
                assert!(rule[i - 1].0 < x);
            }
        }
    }

    #[test]
    fn rule_is_exact_to_degree_63() {
        for degree in 0..64 {
            let got = gl_panel(&|x: f64| x.powi(degree), 0.0, 1.0);
            let exact = 1.0 / (degree as f64 + 1.0);
            assert!(
                (got - exact).abs() < 1e-14,
                "degree {degree}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn adaptive_handles_a_jump() {
        let step = |x: f64| if x < 0.4 { 0.0 } else { 1.0 };
        let r = integrate_panels(&step, &[(0.0, 1.0)], 1e-10, 0.0).unwrap();
        assert!((r.value - 0.6).abs() <= 1e-10, "{r:?}");
        assert!(r.error_estimate <= 1e-10);
        assert!(r.panels > 1);
    }

    #[test]
    fn adaptive_handles_a_narrow_peak() {
        let s = 1e-2;
        let g = move |x: f64| (-(x / s).powi(2)).exp();
        let r = integrate_panels(&g, &[(-1.0, 0.0), (0.0, 1.0)], 1e-12, 0.0).unwrap();
        let exact = s * std::f64::consts::PI.sqrt();
        assert!((r.value - exact).abs() <= 1e-12, "{r:?}");
    }

    #[test]
    fn extra_error_is_charged() {
        let r = integrate_panels(&|_| 1.0, &[(0.0, 1.0)], 1e-6, 1e-7).unwrap();
        assert_eq!(r.error_estimate, 1e-7);
        assert!(integrate_panels(&|_| 1.0, &[(0.0, 1.0)], 1e-6, 1e-6).is_err());
    }
}
