use thiserror::Error;

use crate::stabilizer::Violation;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime below 65536")]
    NotPrime(u32),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} needs {needed} entries, bound is {bound}")]
    BoundExceeded {
        what: &'static str,
        needed: u128,
        bound: u128,
    },

    #[error("invalid stabilizer group: {0}")]
    InvalidStabilizer(Violation),

    #[error("classical code has no codewords")]
    EmptyCode,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("operation requires p = 2, got p = {0}")]
    QubitsOnly(u32),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("code is not invariant under permutation {0}")]
    NotSymmetric(String),

    #[error("no symmetric stabilizer state found after {0} candidates")]
    ExtensionExhausted(usize),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
