use thiserror::Error;

/// Errors raised by the library.
///
/// Everything except [`Error::Internal`] is a rejected input; `Internal`
/// signals that an exactness or consistency check failed, which is a bug.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system {family}{rank}: {reason}")]
    InvalidType {
        family: String,
        rank: usize,
        reason: String,
    },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("weight {weight} has {got} coordinates, expected {expected}")]
    RankMismatch {
        weight: String,
        expected: usize,
        got: usize,
    },
    #[error("empty window")]
    EmptyWindow,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{0}")]
    Rejected(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn rejected(msg: impl Into<String>) -> Self {
        Error::Rejected(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
