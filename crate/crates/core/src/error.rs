//! Crate-wide error type.

use thiserror::Error;

/// All failure modes surfaced by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Filesystem problem, annotated with the offending path.
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// Malformed CSV input.
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    /// Schema declaration problems: duplicate columns, missing target,
    /// header mismatches, unknown column kinds.
    #[error("schema error: {0}")]
    Schema(String),

    /// A cell failed to parse; `row` is 1-based and counts the header.
    #[error("parse error at row {row}: {message}")]
    Parse { row: usize, message: String },

    /// Caller passed an argument outside the documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Array lengths or feature counts disagree.
    #[error("shape mismatch: {0}")]
    Shape(String),

    /// A metric has no defined value on the given data (e.g. single-class
    /// labels for ROC-AUC, or fewer than two groups with defined rates).
    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    /// Model training could not proceed or converge.
    #[error("training error: {0}")]
    Training(String),

    /// Run configuration is unusable (bad TOML, unknown learner family,
    /// missing files referenced by the config).
    #[error("config error: {0}")]
    Config(String),

    /// A serialized model or report could not be decoded.
    #[error("format error: {0}")]
    Format(String),
}

impl Error {
    /// Convenience constructor for [`Error::Io`].
    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        Error::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
