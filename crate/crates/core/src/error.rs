use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the library and the CLI.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("the even prime 2 is not supported here (odd primes only)")]
    EvenPrime,

    #[error("index {k} out of range for p = {p}: need even k with 2 <= k <= p - 3")]
    OutOfRange { k: u64, p: u64 },

    #[error("valuation of zero is undefined")]
    ZeroInput,

    #[error("{constituent}: degree {degree} is outside the validated range (max {max})")]
    OutOfValidatedRange {
        constituent: String,
        degree: i64,
        max: i64,
    },

    #[error("summand index {index} out of range for p = {p} (need 0 <= i <= p - 2)")]
    IndexOutOfRange { index: u64, p: u64 },

    #[error("could not parse group value {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("bernoulli cache {path}: line {line}: {reason}")]
    Cache {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    #[error("{0}")]
    Usage(String),

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn out_of_range(constituent: impl Into<String>, degree: i64, max: i64) -> Self {
        Error::OutOfValidatedRange {
            constituent: constituent.into(),
            degree,
            max,
        }
    }
}
