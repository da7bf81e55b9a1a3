use std::path::PathBuf;

use thiserror::Error;

/// Crate-wide error type.
///
/// Variants split into three families that the CLI maps onto exit codes:
/// configuration/usage problems, I/O and parse failures, and contract
/// violations (a caller broke an API precondition).
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("feature value at position {index} is not finite")]
    NonFiniteFeature { index: usize },

    #[error("radius must be positive, got {0}")]
    NonPositiveSigma(f64),

    #[error("class count must be at least 1")]
    ZeroClassCount,

    #[error("model has no hidden units")]
    EmptyModel,

    #[error("dataset is empty")]
    EmptyDataset,

    #[error("no hidden unit with id {0}")]
    UnknownUnitId(u64),

    #[error("no output unit with label {0:?}")]
    UnknownLabel(String),

    #[error("duplicate output label {0:?}")]
    DuplicateLabel(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn parse(path: impl Into<PathBuf>, line: u64, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors caused by malformed input files or failed I/O.
    pub fn is_io_or_parse(&self) -> bool {
        matches!(self, Error::Parse { .. } | Error::Io { .. })
    }

    /// True for errors caused by an invalid run configuration.
    pub fn is_config(&self) -> bool {
        matches!(self, Error::Config(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
