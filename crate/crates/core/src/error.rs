use thiserror::Error;

use crate::arith::Natural;

/// Everything that can go wrong when invoking an operation.
///
/// Precondition violations are kept apart from [`Error::Internal`] so a
/// caller never mistakes misuse for a mathematical verdict.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    BothZero,

    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("{0} is not prime")]
    NotPrime(Natural),

    #[error("{what} must be at least {min}, got {value}")]
    BelowMinimum {
        what: &'static str,
        min: u64,
        value: Natural,
    },

    #[error("{divisor} does not divide {value}")]
    NotADivisor { divisor: Natural, value: Natural },

    #[error("the valuation of 0 is infinite")]
    ZeroValuation,

    #[error("{what} = {value} exceeds the supported limit of {limit}")]
    TooLarge {
        what: &'static str,
        value: Natural,
        limit: Natural,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by the caller's input rather than by a bug.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Internal(_) | Error::Io(_))
    }

    pub(crate) fn below(what: &'static str, min: u64, value: &Natural) -> Self {
        Error::BelowMinimum {
            what,
            min,
            value: value.clone(),
        }
    }

    pub(crate) fn too_large(
        what: &'static str,
        value: &Natural,
        limit: impl Into<Natural>,
    ) -> Self {
        Error::TooLarge {
            what,
            value: value.clone(),
            limit: limit.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
