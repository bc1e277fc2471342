use thiserror::Error;

/// Errors surfaced by the core pipeline stages.
#[derive(Debug, Error)]
pub enum Error {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed row at {path}:{line}: {message}")]
    Parse {
        path: String,
        line: u64,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("data error: {0}")]
    Data(String),

    #[error("empty candidate pool for strategy {strategy}")]
    EmptyPool { strategy: &'static str },

    #[error("rejection budget of {attempts} draws exhausted for strategy {strategy} (graph is near-complete for this pool)")]
    RejectionBudgetExceeded {
        strategy: &'static str,
        attempts: usize,
    },

    #[error("missing external score for positive ordinal {ordinal}, slot {slot}")]
    MissingScore { ordinal: usize, slot: usize },

    #[error("sampler spec hash mismatch: scores were produced for {found}, expected {expected}")]
    SpecHashMismatch { expected: String, found: String },

    #[error("out-of-order advance: event ordinal {ordinal} is not past the watermark {watermark}")]
    OutOfOrder { watermark: usize, ordinal: usize },
}

impl Error {
    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
