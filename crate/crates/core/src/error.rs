use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("level {level}, vertex {vertex}: {reason}")]
    Structural {
        level: usize,
        vertex: usize,
        reason: String,
    },

    #[error("level {level} is beyond the diagram (depth {depth})")]
    LevelOutOfRange { level: usize, depth: usize },

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid contraction: {0}")]
    InvalidCuts(String),

    #[error("hypothesis {hypothesis} fails at level {level}")]
    Hypothesis { hypothesis: &'static str, level: usize },

    #[error("suffix above level {level} is too short to finish the excursion")]
    NeedsDeeperSuffix { level: usize },

    #[error("brute-force enumeration did not resolve within depth {cap}")]
    InconclusiveOracle { cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("numerical failure: {0}")]
    Numeric(String),

    #[error("no invariant measure available at level {level}: {reason}")]
    MeasureUnavailable { level: usize, reason: String },

    #[error("cannot normalize: {0}")]
    Normalize(String),

    #[error("value outside domain: {0}")]
    Domain(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("diagram file: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by malformed input rather than by the mathematics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Structural { .. }
                | Error::Format(_)
                | Error::Json(_)
                | Error::InvalidPath(_)
                | Error::InvalidCuts(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
