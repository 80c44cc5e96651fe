use thiserror::Error;

/// Failure classes surfaced by every stage of the pipeline.
///
/// The classes map one-to-one onto the CLI exit codes: `Parse` and
/// `InvalidInput` are user errors, `Capability` marks an input outside
/// the supported algorithmic envelope, and `Internal` means an identity
/// that must hold did not (a defect, never an input problem).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("capability limit: {0}")]
    Capability(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn capability(msg: impl Into<String>) -> Self {
        Error::Capability(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
