use thiserror::Error;

/// Errors raised by complex construction, homology and the search routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: length mismatches, non-subcomplexes, bad words.
    #[error("structural error: {0}")]
    Structural(String),
    /// A documented precondition of an operation was violated.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Checked integer arithmetic overflowed.
    #[error("arithmetic overflow: {0}")]
    Arithmetic(String),
    /// A mathematical invariant that must hold for valid input did not.
    #[error("contradiction: {0}")]
    Contradiction(String),
    /// Invalid generator parameters.
    #[error("parameter error: {0}")]
    Parameter(String),
    /// File parse failure, with a 1-based line number.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
