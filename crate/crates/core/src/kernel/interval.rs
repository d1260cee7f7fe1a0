use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};

/// Exact rational endpoint type.
pub type Rational = Ratio<i64>;

/// Parses `"p/q"` or `"p"`; decimal notation is rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    s.parse::<Rational>()
        .map_err(|_| Error::invalid(format!("`{s}` is not a rational of the form p/q")))
}

pub(crate) fn to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Closed integration interval `[eta1, eta2]` with exact rational endpoints.
///
/// Both endpoints must be integers, or neither may be; integrality is read
/// off the reduced rational, never from a float.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelInterval {
    eta1: Rational,
    eta2: Rational,
    endpoint1_integer: bool,
    endpoint2_integer: bool,
}

impl KernelInterval {
    pub fn new(eta1: Rational, eta2: Rational) -> Result<Self> {
        if eta1 > eta2 {
            return Err(Error::invalid(format!(
                "interval [{eta1}, {eta2}] is reversed"
            )));
        }
        let endpoint1_integer = eta1.is_integer();
        let endpoint2_integer = eta2.is_integer();
        if endpoint1_integer != endpoint2_integer {
            return Err(Error::EndpointRegime(format!(
                "[{eta1}, {eta2}] mixes an integer and a non-integer endpoint"
            )));
        }
        Ok(Self {
            eta1,
            eta2,
            endpoint1_integer,
            endpoint2_integer,
        })
    }

    /// Parses both endpoints with [`parse_rational`].
    pub fn parse(eta1: &str, eta2: &str) -> Result<Self> {
        Self::new(parse_rational(eta1)?, parse_rational(eta2)?)
    }

    pub fn from_integers(a: i64, b: i64) -> Result<Self> {
        Self::new(Rational::from_integer(a), Rational::from_integer(b))
    }

    pub fn eta1(&self) -> Rational {
        self.eta1
    }

    pub fn eta2(&self) -> Rational {
        self.eta2
    }

    pub fn endpoint1_integer(&self) -> bool {
        self.endpoint1_integer
    }

    pub fn endpoint2_integer(&self) -> bool {
        self.endpoint2_integer
    }

    pub fn lo(&self) -> f64 {
        to_f64(&self.eta1)
    }

    pub fn hi(&self) -> f64 {
        to_f64(&self.eta2)
    }

    /// Integers `m` with `eta1 <= m <= eta2`, ascending.
    pub fn integers(&self) -> std::ops::RangeInclusive<i64> {
        let first = self.eta1.ceil().to_integer();
        let last = self.eta2.floor().to_integer();
        first..=last
    }

    pub fn contains(&self, r: &Rational) -> bool {
        self.eta1 <= *r && *r <= self.eta2
    }
}

impl fmt::Display for KernelInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.eta1, self.eta2)
    }
}

impl Serialize for KernelInterval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
