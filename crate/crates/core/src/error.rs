use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("input out of domain: {0}")]
    Domain(String),
    /// A structural precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A text file could not be parsed.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    /// The request is larger than the exact search supports.
    #[error("unsupported scale: {0}")]
    Scale(String),
    /// Exact integer arithmetic overflowed.
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    /// An internal consistency check failed.
    #[error("consistency violation: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
