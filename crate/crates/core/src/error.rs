use thiserror::Error;

/// Errors surfaced by the enumeration, fan and algebra layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("tree is not axially symmetric: {0}")]
    NotAxiallySymmetric(String),

    #[error("tree is not centrally symmetric: {0}")]
    NotCentrallySymmetric(String),

    #[error("label sets do not agree: {0}")]
    LabelMismatch(String),

    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    /// A Gröbner or LP computation exhausted its budget and was abandoned.
    #[error("resource cap exceeded after {pairs} S-pairs (cap {cap})")]
    Cancelled { pairs: usize, cap: usize },

    #[error("time limit of {millis} ms exceeded after {pairs} S-pairs")]
    TimeLimit { millis: u64, pairs: usize },

    #[error("degenerate ideal: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
