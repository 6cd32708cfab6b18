use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or out-of-contract input.
    InvalidInput(String),
    /// A sign or floor could not be certified before the enclosure width
    /// reached the precision cap.
    Ambiguity(String),
    /// Well-formed input outside what the library handles
    /// (e.g. noncommutative fusion rings).
    Unsupported(String),
    /// A floating-point computation could not separate its eigenvalues.
    Precision(String),
    /// Polynomial factorization was asked for a squarefree part above the cap.
    DegreeCap { degree: usize, cap: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn ambiguous(msg: impl Into<String>) -> Self {
        Error::Ambiguity(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidInput(m) => write!(f, "invalid input: {m}"),
            Error::Ambiguity(m) => write!(f, "precision ambiguity: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported: {m}"),
            Error::Precision(m) => write!(f, "numeric precision failure: {m}"),
            Error::DegreeCap { degree, cap } => {
                write!(f, "factorization degree {degree} exceeds the cap of {cap}")
            }
        }
    }
}

impl core::error::Error for Error {}
