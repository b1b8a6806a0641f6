use thiserror::Error;

/// Errors surfaced by configuration loading, campaign execution, and result I/O.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration key is missing, unparseable, or violates an invariant.
    #[error("config key `{key}`: {reason}")]
    Config { key: String, reason: String },

    /// A scheme was asked to run with inconsistent dimensions or inputs.
    #[error("scheme setup: {0}")]
    SchemeSetup(String),

    /// A closed-form evaluation produced a value outside its guaranteed range.
    #[error("numerical integrity: {0}")]
    Numerical(String),

    /// Percentile extraction over an empty sample vector.
    #[error("empty sample set")]
    EmptySamples,

    /// Percentile rank outside [0, 1].
    #[error("percentile rank {0} outside [0, 1]")]
    BadPercentileRank(f64),

    #[error("unknown scheme `{0}`")]
    UnknownScheme(String),

    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),

    #[error("result file: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn config(key: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
