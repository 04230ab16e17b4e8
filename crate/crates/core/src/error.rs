use thiserror::Error;

/// Errors produced by the library and the command-line front end.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("derivation index {index} out of range (the field has {count} derivations)")]
    BadDerivation { index: usize, count: usize },
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("operation is only supported for a single derivation")]
    UnsupportedForPartial,
    #[error("the zero element has no leader")]
    ZeroElement,
    #[error("leader exponent vectors do not form an antichain")]
    NotAntichain,
    #[error("dimension polynomials require an orderly ranking")]
    OrderlyRequired,
    #[error("point is not on the variety: equation {} evaluates to {value}", index + 1)]
    PointNotOnVariety { index: usize, value: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
