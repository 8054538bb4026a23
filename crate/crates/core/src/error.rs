use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("line {line}: {message}")]
    Value { line: u64, message: String },

    #[error("line {line}: duplicate record for journal {journal:?} in category {category:?}")]
    Duplicate {
        line: u64,
        journal: String,
        category: String,
    },

    #[error("category not found: {0:?}")]
    NotFound(String),

    #[error("empty data: {0}")]
    EmptyData(String),

    #[error("probability {0} outside (0, 1]")]
    Domain(f64),

    #[error("histograms do not share the same bin spec")]
    IncompatibleSupport,

    #[error("absolute continuity violated at bin {bin}: p = {p}, q = 0")]
    AbsoluteContinuity { bin: usize, p: f64 },

    #[error("candidate {candidate:?}: {source}")]
    Candidate {
        candidate: String,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// Coarse classification used for process exit codes and FFI status codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Unreadable or malformed input.
    Input,
    /// Well-formed input that the analysis cannot use.
    Domain,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse { .. }
            | Error::Value { .. }
            | Error::Duplicate { .. }
            | Error::Io(_)
            | Error::Csv(_) => ErrorKind::Input,
            Error::Candidate { source, .. } => source.kind(),
            _ => ErrorKind::Domain,
        }
    }
}
