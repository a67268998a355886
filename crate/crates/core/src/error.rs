use thiserror::Error;

/// Errors raised while constructing or transforming monomial data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values built over different rings were combined.
    #[error("ring context mismatch: expected {expected} variables, found {found}")]
    Context { expected: usize, found: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    /// The generators do not describe a proper nonzero monomial ideal.
    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("capacity exceeded: {what} is {actual}, limit is {limit}")]
    Capacity {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    /// A linear exponent evaluated to a negative number.
    #[error("generator {generator}: exponent of {variable} evaluates to {value} at n = {n}")]
    Domain {
        generator: usize,
        variable: String,
        value: i64,
        n: i64,
    },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
