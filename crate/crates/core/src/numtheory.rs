//! Exact integer-side arithmetic.
//!
//! Divisor enumeration and trial-division factorization for integers in a
//! configurable brute-force range, symbolic factorizations of `m!`,
//! `lcm(1..m)` and the primorial power `P_m = (p_1 ... p_m)^m` that are never
//! materialized as machine integers, and two independent routes to the
//! normalized divisor sum `G_a(m) = sigma_a(m) / m^a`:
//!
//! * [`g_alpha_brute`] enumerates divisors directly, and
//! * [`g_from_factorization`] multiplies per-prime geometric sums.
//!
//! The second route relies on multiplicativity of `sigma_a` and is kept as a
//! cross-check for the first; nothing downstream proves anything with it.
//!
//! [`zeta`] returns the Riemann zeta function for real `a > 1` as a certified
//! bracket `[value, value + tail_bound]`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sum::Compensated;

/// Largest integer accepted by the trial-division routines unless a caller
/// supplies its own cap.
pub const DEFAULT_BRUTE_CAP: u64 = 10_000_000;

/// Largest `m` accepted by the symbolic factorization builders.
pub const MAX_SYMBOLIC_M: u64 = 1_000_000;

/// Smallest admissible `alpha - 1` for [`zeta`].
pub const ZETA_ALPHA_GUARD: f64 = 1e-6;

/// Largest number of explicit terms [`zeta`] will sum.
pub const ZETA_MAX_TERMS: u64 = 1_000_000_000;

/// Prime-power factorization `prod p_i^e_i` with strictly increasing primes
/// and positive exponents. The empty factorization represents 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn one() -> Self {
        Self::default()
    }

    /// Builds a factorization, checking the ordering and exponent invariants.
    ///
    /// Primality of the bases is the caller's responsibility; only `p >= 2`
    /// is checked.
    pub fn new(factors: Vec<(u64, u32)>) -> Result<Self> {
        for (i, &(p, e)) in factors.iter().enumerate() {
            if p < 2 {
                return Err(Error::invalid(format!("factor base {p} is not a prime")));
            }
            if e == 0 {
                return Err(Error::invalid(format!("exponent of {p} is zero")));
            }
            if i > 0 && factors[i - 1].0 >= p {
                return Err(Error::invalid("primes must be strictly increasing"));
            }
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The represented integer, if it fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            p.checked_pow(e).and_then(|pe| acc.checked_mul(pe))
        })
    }

    /// Number of divisors, `prod (e_i + 1)`, if it fits in a `u128`.
    pub fn divisor_count(&self) -> Option<u128> {
        self.factors
            .iter()
            .try_fold(1u128, |acc, &(_, e)| acc.checked_mul(u128::from(e) + 1))
    }

    /// Residue of the represented integer modulo `modulus`, by modular
    /// exponentiation over the prime powers.
    pub fn rem_u64(&self, modulus: u64) -> u64 {
        assert!(modulus > 0, "modulus must be positive");
        if modulus == 1 {
            return 0;
        }
        let m = u128::from(modulus);
        self.factors.iter().fold(1u128, |acc, &(p, e)| {
            acc * pow_mod(u128::from(p) % m, u64::from(e), m) % m
        }) as u64
    }

    /// Natural logarithm of the represented integer.
    pub fn ln(&self) -> f64 {
        self.factors
            .iter()
            .map(|&(p, e)| f64::from(e) * (p as f64).ln())
            .sum()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

fn pow_mod(mut base: u128, mut exp: u64, modulus: u128) -> u128 {
    let mut acc = 1u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    if count == 0 {
        return Vec::new();
    }
    // p_n < n (ln n + ln ln n) for n >= 6
    let bound = if count < 6 {
        13
    } else {
        let n = count as f64;
        (n * (n.ln() + n.ln().ln())).ceil() as u64
    };
    let mut primes = primes_up_to(bound);
    primes.truncate(count);
    primes
}

fn check_brute(m: u64, cap: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::out_of_range("m", m, "m >= 1"));
    }
    if m > cap {
        return Err(Error::out_of_range("m", m, "m <= brute-force cap"));
    }
    Ok(())
}

/// Divisors of `m` in ascending order, by trial division up to `sqrt(m)`.
pub fn divisors_brute(m: u64) -> Result<Vec<u64>> {
    divisors_brute_capped(m, DEFAULT_BRUTE_CAP)
}

/// [`divisors_brute`] with an explicit cap on `m`.
pub fn divisors_brute_capped(m: u64, cap: u64) -> Result<Vec<u64>> {
    check_brute(m, cap)?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= m {
        if m.is_multiple_of(k) {
            small.push(k);
            if k * k != m {
                large.push(m / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// Factorization of `m` by trial division.
pub fn factorize(m: u64) -> Result<Factorization> {
    factorize_capped(m, DEFAULT_BRUTE_CAP)
}

pub fn factorize_capped(mut m: u64, cap: u64) -> Result<Factorization> {
    check_brute(m, cap)?;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0u32;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { factors })
}

fn check_finite(x: f64, what: &str) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::Overflow(what.to_string()))
    }
}

/// `sigma_alpha(m) = sum_{k | m} k^alpha`, summed smallest magnitude first.
pub fn sigma_exact(alpha: f64, m: u64) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(Error::invalid("alpha must be finite"));
    }
    let divisors = divisors_brute(m)?;
    let mut acc = Compensated::new();
    let mut add = |k: u64| -> Result<()> {
        acc.add(check_finite((k as f64).powf(alpha), "sigma term")?);
        Ok(())
    };
    if alpha >= 0.0 {
        divisors.iter().try_for_each(|&k| add(k))?;
    } else {
        divisors.iter().rev().try_for_each(|&k| add(k))?;
    }
    check_finite(acc.value(), "sigma")
}

/// `G_alpha(m) = sigma_alpha(m) / m^alpha`, evaluated as `sum_{k | m} k^-alpha`
/// so that `m^alpha` is never formed.
pub fn g_alpha_brute(alpha: f64, m: u64) -> Result<f64> {
    if !alpha.is_finite() {
        return Err(Error::invalid("alpha must be finite"));
    }
    let divisors = divisors_brute(m)?;
    let mut acc = Compensated::new();
    let mut add = |k: u64| -> Result<()> {
        acc.add(check_finite((k as f64).powf(-alpha), "G term")?);
        Ok(())
    };
    if alpha >= 0.0 {
        divisors.iter().rev().try_for_each(|&k| add(k))?;
    } else {
        divisors.iter().try_for_each(|&k| add(k))?;
    }
    check_finite(acc.value(), "G")
}

/// Exponent of the prime `p` in `m!` (Legendre).
pub fn legendre_exponent(m: u64, p: u64) -> u64 {
    let mut e = 0;
    let mut q = m;
    while q > 0 {
        q /= p;
        e += q;
    }
    e
}

fn check_symbolic(m: u64) -> Result<()> {
    if m == 0 || m > MAX_SYMBOLIC_M {
        return Err(Error::out_of_range("m", m, "1 <= m <= 1000000"));
    }
    Ok(())
}

/// Factorization of `m!`.
pub fn factorial_factorization(m: u64) -> Result<Factorization> {
    check_symbolic(m)?;
    let factors = primes_up_to(m)
        .into_iter()
        .map(|p| (p, legendre_exponent(m, p) as u32))
        .collect();
    Ok(Factorization { factors })
}

/// Factorization of `lcm(1, 2, ..., m)`: each prime `p <= m` appears with the
/// largest `j` such that `p^j <= m`.
pub fn lcm_factorization(m: u64) -> Result<Factorization> {
    check_symbolic(m)?;
    let factors = primes_up_to(m)
        .into_iter()
        .map(|p| {
            let mut e = 0u32;
            let mut q = 1u64;
            while q * p <= m {
                q *= p;
                e += 1;
            }
            (p, e)
        })
        .collect();
    Ok(Factorization { factors })
}

/// Factorization of `P_m`, the `m`-th power of the product of the first `m`
/// primes.
pub fn primorial_power_factorization(m: u64) -> Result<Factorization> {
    check_symbolic(m)?;
    let factors = first_primes(m as usize)
        .into_iter()
        .map(|p| (p, m as u32))
        .collect();
    Ok(Factorization { factors })
}

/// `sum_{j=0}^{e} p^{-j alpha}`, smallest term first.
fn geometric_inverse_powers(alpha: f64, p: u64, e: u32) -> f64 {
    let ln_p = (p as f64).ln();
    // terms past this index are below the smallest subnormal
    let last_nonzero = (1080.0 / (alpha * ln_p)).ceil();
    let top = if f64::from(e) > last_nonzero {
        last_nonzero as u32
    } else {
        e
    };
    let mut acc = Compensated::new();
    for j in (0..=top).rev() {
        acc.add((p as f64).powf(-alpha * f64::from(j)));
    }
    acc.value()
}

/// `G_alpha` of the integer represented by `f`, as
/// `prod_{(p,e)} sum_{j=0}^{e} p^{-j alpha}`.
///
/// Cross-check route: agrees with [`g_alpha_brute`] whenever the represented
/// integer is small enough to enumerate.
pub fn g_from_factorization(alpha: f64, f: &Factorization) -> Result<f64> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::out_of_range("alpha", alpha, "alpha > 0"));
    }
    Ok(f.factors
        .iter()
        .map(|&(p, e)| geometric_inverse_powers(alpha, p, e))
        .product())
}

/// Certified value of the Riemann zeta function at real `alpha > 1`.
///
/// The true value lies in `[value, value + tail_bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZetaValue {
    pub alpha: f64,
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
}

impl ZetaValue {
    pub fn upper(&self) -> f64 {
        self.value + self.tail_bound
    }

    pub fn contains(&self, x: f64) -> bool {
        self.value <= x && x <= self.upper()
    }
}

const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Parts of the tail `sum_{k > K} k^-alpha`, bracketed by integral comparison.
///
/// With `c = K + 1` and `f(x) = x^-alpha` convex and decreasing:
/// * trapezoid overestimates the integral, so the tail is at least
///   `int_c^inf f + f(c)/2`;
/// * midpoint underestimates it, so the tail is at most `int_{c-1/2}^inf f`.
struct TailBracket {
    lower: f64,
    width: f64,
}

fn tail_bracket(alpha: f64, terms: u64) -> TailBracket {
    let c = terms as f64 + 1.0;
    let s = alpha - 1.0;
    let integral_from_c = (-s * c.ln()).exp() / s;
    let half_term = 0.5 * (-alpha * c.ln()).exp();
    // int_{c-1/2}^{c} f, without cancellation
    let left_strip = integral_from_c * (-s * (-0.5 / c).ln_1p()).exp_m1();
    let width = (left_strip - half_term) + 8.0 * UNIT_ROUNDOFF * (left_strip + half_term);
    TailBracket {
        lower: integral_from_c + half_term,
        width: width.max(0.0),
    }
}

fn zeta_slack(terms: u64, magnitude: f64) -> f64 {
    (8.0 * UNIT_ROUNDOFF + 4.0 * terms as f64 * UNIT_ROUNDOFF * UNIT_ROUNDOFF) * magnitude
}

/// Riemann zeta at real `alpha > 1 + 1e-6`, as a bracket no wider than `tol`.
///
/// Sums the smallest number of terms `K` for which the integral-comparison
/// tail bracket plus a rounding allowance fits in `tol`.
pub fn zeta(alpha: f64, tol: f64) -> Result<ZetaValue> {
    if !(alpha > 1.0 + ZETA_ALPHA_GUARD) || !alpha.is_finite() {
        return Err(Error::out_of_range("alpha", alpha, "alpha > 1 + 1e-6"));
    }
    if !(tol > 0.0) {
        return Err(Error::out_of_range("tol", tol, "tol > 0"));
    }
    // zeta(alpha) <= 1 + 1/(alpha - 1)
    let magnitude = 1.0 + 1.0 / (alpha - 1.0);
    let fits = |k: u64| tail_bracket(alpha, k).width + 2.0 * zeta_slack(k, magnitude) <= tol;
    if !fits(ZETA_MAX_TERMS) {
        return Err(Error::ToleranceUnachievable {
            tol,
            reason: format!("zeta({alpha}) would need more than {ZETA_MAX_TERMS} terms"),
        });
    }
    let (mut lo, mut hi) = (1u64, 1u64);
    while !fits(hi) {
        lo = hi + 1;
        hi = (hi * 2).min(ZETA_MAX_TERMS);
    }
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let terms = hi;

    let mut acc = Compensated::new();
    for k in (1..=terms).rev() {
        acc.add((k as f64).powf(-alpha));
    }
    let partial = acc.value();
    let tail = tail_bracket(alpha, terms);
    let slack = zeta_slack(terms, partial + tail.lower);
    Ok(ZetaValue {
        alpha,
        value: partial + tail.lower - slack,
        tail_bound: tail.width + 2.0 * slack,
        terms_used: terms,
    })
}
