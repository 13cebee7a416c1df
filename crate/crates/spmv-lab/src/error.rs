use std::path::PathBuf;

/// Crate-wide error type.
///
/// Variants are grouped by how the CLI maps them to exit codes:
/// usage problems (bad parameters) exit 1, I/O and parse problems exit 2,
/// validation failures (checksum mismatches, broken invariants) exit 3.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("{path}:{line}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        msg: String,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("matrix exceeds 32-bit index capacity: {0}")]
    IndexOverflow(String),

    #[error("infeasible generator budget: {0}")]
    InfeasibleBudget(String),

    #[error("validation failed: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI uses for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParameter(_) | Error::DimensionMismatch(_) => 1,
            Error::Parse { .. } | Error::Io { .. } => 2,
            Error::IndexOutOfRange(_)
            | Error::IndexOverflow(_)
            | Error::InfeasibleBudget(_)
            | Error::Validation(_) => 3,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
