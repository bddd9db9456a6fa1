use thiserror::Error;

/// Errors raised by the library. Each variant maps onto one CLI exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument outside the operation's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An exact-integer computation left the 127-bit signed range.
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(i128, i128),

    /// A computation was refused because its size exceeds a fixed guard.
    #[error("resource guard: {0}")]
    ResourceGuard(String),

    /// Independently computed predicates that must agree did not.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
