//! Error type shared by every pipeline stage.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse failure class, used by the CLI to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Data,
    Invariant,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Config => "config",
            ErrorKind::Data => "data",
            ErrorKind::Invariant => "invariant",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Config => 2,
            ErrorKind::Data => 3,
            ErrorKind::Invariant => 4,
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("duplicate title {title:?} with conflicting ids {first} and {second}")]
    ConflictingId { title: String, first: u64, second: u64 },

    #[error("unknown root category {0:?}")]
    UnknownRoot(String),

    #[error("sample size k={k} is not smaller than area {area:?} of size {size}")]
    SampleTooLarge { area: String, size: usize, k: usize },

    #[error("invalid sampling configuration: {0}")]
    InvalidSampleConfig(String),

    #[error("degenerate corpus: total {0} weight is zero")]
    ZeroTotalWeight(&'static str),

    #[error("area {0:?} has zero external weight")]
    ZeroExternalWeight(String),

    #[error("area {0:?} has zero total weight")]
    ZeroTotalAreaWeight(String),

    #[error("knowledge network is disconnected; components: {0:?}")]
    Disconnected(Vec<Vec<String>>),

    #[error("unknown area {0:?}")]
    UnknownArea(String),

    #[error("unknown discipline column {0:?}")]
    UnknownDiscipline(String),

    #[error("duplicate review row {0:?}")]
    DuplicateRow(String),

    #[error("review row {0:?} cites no discipline")]
    EmptyHyperedge(String),

    #[error("area {area:?} needs {needed} discipline neighbours but only {available} exist")]
    NotEnoughNeighbours {
        area: String,
        needed: usize,
        available: usize,
    },

    #[error("invalid block model: {0}")]
    InvalidSbm(String),

    #[error("expected unnormalized counts")]
    ExpectedRawCounts,

    #[error("invalid binary graph: {0}")]
    BadBinary(String),

    #[error("{0}")]
    Config(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn parse(path: impl Into<PathBuf>, line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            path: path.into(),
            line,
            message: message.into(),
        }
    }

    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Config(_) | Error::InvalidSampleConfig(_) | Error::UnknownRoot(_) => ErrorKind::Config,
            Error::Invariant(_) => ErrorKind::Invariant,
            _ => ErrorKind::Data,
        }
    }
}
