use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or out-of-range input parameters.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// A mathematical hypothesis of an operation is violated.
    #[error("domain error: {0}")]
    Domain(String),
    /// A numerical procedure failed to converge or bracket.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// A configured size cap was exceeded.
    #[error("resource limit: {0}")]
    Resource(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
