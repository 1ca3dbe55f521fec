use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped so that front ends can map them onto exit codes:
/// [`Error::Domain`] and [`Error::Precondition`] are caller mistakes about
/// the mathematical inputs, [`Error::Parse`] and [`Error::Io`] concern
/// ingestion of text and files.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid partition {parts:?}: {reason}")]
    InvalidPartition { parts: Vec<u32>, reason: &'static str },

    #[error("partitions have different weights ({left} vs {right})")]
    UnequalWeights { left: u32, right: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
