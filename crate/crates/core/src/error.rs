use thiserror::Error;

/// Failure modes shared by every module.
///
/// `Rejected` marks inputs outside an operation's domain; `Consistency`
/// marks an internal invariant that failed and always indicates a bug.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Cartan type: {0}")]
    InvalidType(String),
    #[error("rejected: {0}")]
    Rejected(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn rejected(msg: impl Into<String>) -> Self {
        Error::Rejected(msg.into())
    }

    pub fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }

    /// True for errors caused by the caller's input rather than by a bug.
    pub fn is_precondition(&self) -> bool {
        matches!(self, Error::InvalidType(_) | Error::Rejected(_) | Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
