use std::path::PathBuf;

/// Errors raised by the library and the harness.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("objective dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("bitstring length {actual} does not match problem size {expected}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("population is empty")]
    EmptyPopulation,

    #[error("layers hold {available} individuals, cannot fill {capacity} slots")]
    InsufficientIndividuals { available: usize, capacity: usize },

    #[error("point {point:?} lies below the hypervolume reference {reference:?}")]
    BelowReference {
        point: Vec<i64>,
        reference: [i64; 2],
    },

    #[error("index {index} is not a member of a set of size {len}")]
    NotAMember { index: usize, len: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}
