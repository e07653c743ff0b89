use thiserror::Error;

/// Errors raised by the library. Every variant maps onto one of the machine-readable
/// `kind` strings emitted by the command-line tool.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("resource bound exceeded: matrix dimension {size} exceeds limit {limit}")]
    Resource { size: usize, limit: usize },

    #[error("braiding is singular")]
    SingularBraiding,

    #[error("braid equation fails on basis triple ({}, {}, {})", .triple[0], .triple[1], .triple[2])]
    BraidEquation { triple: [usize; 3] },

    #[error("relation ideal is not a coideal in degree {degree}")]
    NotCoideal { degree: usize },

    #[error("bad prime: {0}")]
    BadPrime(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidArgument(_) => "invalid-argument",
            Error::Domain(_) => "domain",
            Error::Unsupported(_) => "unsupported-operation",
            Error::Resource { .. } => "resource",
            Error::SingularBraiding | Error::BraidEquation { .. } => "invalid-braiding",
            Error::NotCoideal { .. } => "not-coideal",
            Error::BadPrime(_) => "bad-prime",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
