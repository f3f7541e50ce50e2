use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    Domain(String),
    #[error("division is not exact; remainder {0}")]
    NotExact(String),
    #[error("polynomial is not symmetric under s_{0}")]
    NotSymmetric(i64),
    #[error("no assignment for variable {0}")]
    MissingVariable(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
