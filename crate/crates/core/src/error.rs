//! Error type shared by every module in this crate.

use std::fmt;

/// Errors produced by polynomial arithmetic, enumeration, and table builders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A coefficient, table entry, or evaluation exceeded `u64` range.
    Overflow,
    /// Degree or leading coefficient requested for the zero polynomial.
    ZeroPolynomial,
    /// An input violated a documented precondition.
    Domain(String),
    /// An enumeration or allocation exceeded its configured budget.
    Capacity { required: u64, limit: u64 },
    /// A table entry disagrees with the value recomputed from the
    /// polynomial recursion.
    Mismatch {
        n: u64,
        field: &'static str,
        expected: u64,
        actual: u64,
    },
    /// An underlying I/O operation failed.
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Overflow => write!(f, "arithmetic overflow in u64"),
            Error::ZeroPolynomial => {
                write!(
                    f,
                    "degree and leading coefficient are undefined for the zero polynomial"
                )
            }
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Capacity { required, limit } => {
                write!(f, "capacity exceeded: required {required}, limit {limit}")
            }
            Error::Mismatch {
                n,
                field,
                expected,
                actual,
            } => {
                write!(
                    f,
                    "table mismatch at n={n}: {field} expected {expected}, got {actual}"
                )
            }
            Error::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
