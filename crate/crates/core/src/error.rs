use thiserror::Error;

/// Errors raised by the library.
///
/// Variants split into two families that the command-line front end maps to
/// distinct exit codes: bad input (`exit_code() == 2`) and numeric failure
/// (`exit_code() == 3`).
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("argument `{name}` = {value} is outside the supported range {range}")]
    ArgumentOutOfRange {
        name: &'static str,
        value: String,
        range: &'static str,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("endpoint regime violation: {0}")]
    EndpointRegime(String),

    #[error("floating-point overflow while evaluating {0}")]
    Overflow(String),

    #[error("tolerance {tol:e} unachievable: {reason}")]
    ToleranceUnachievable { tol: f64, reason: String },

    #[error("iteration cap exceeded: {0}")]
    IterationCap(String),
}

impl Error {
    pub(crate) fn out_of_range(
        name: &'static str,
        value: impl ToString,
        range: &'static str,
    ) -> Self {
        Error::ArgumentOutOfRange {
            name,
            value: value.to_string(),
            range,
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ArgumentOutOfRange { .. }
            | Error::InvalidArgument(_)
            | Error::EndpointRegime(_) => 2,
            Error::Overflow(_) | Error::ToleranceUnachievable { .. } | Error::IterationCap(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
