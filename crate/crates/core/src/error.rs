use thiserror::Error;

/// Errors produced while building instances or running constructions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{ell}^{n} does not divide q - 1 = {q_minus_one}")]
    PowerDoesNotDivide { ell: u64, n: u32, q_minus_one: u64 },

    /// An argument lies outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A construction produced a value that contradicts its own invariants.
    #[error("inconsistent construction: {0}")]
    Inconsistent(String),

    #[error("instance too large for the oracle: {0}")]
    OracleLimit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
