// `!(x > 0.0)` is used on purpose to reject NaN along with the range.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod approximants;
pub mod cli;
pub mod error;
pub mod gronwall;
pub mod kernel;
pub mod logpow;
pub mod numtheory;
pub mod sum;

pub use error::{Error, Result};
