//! Error type shared across the crate.

use std::path::PathBuf;

/// Errors produced while parsing input, validating configuration, or
/// running the pipeline.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A `surface/TAG` item could not be parsed. Line and column are
    /// 1-based; columns count Unicode scalar values, not bytes.
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// Configuration file could not be read or deserialized.
    #[error("config error in {path}: {message}")]
    Config { path: PathBuf, message: String },

    /// An input violated a documented precondition (empty corpus,
    /// non-positive k, empty reference file, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A measure name that is not one of llr, c, nc, ntc, llr_c, nlc.
    #[error("unknown measure: {0}")]
    UnknownMeasure(String),

    /// A pipeline stage failed; the stage name is part of the message so
    /// the CLI can surface where a run aborted.
    #[error("{stage} stage failed: {message}")]
    Stage { stage: &'static str, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn stage(stage: &'static str, err: Error) -> Error {
        Error::Stage {
            stage,
            message: err.to_string(),
        }
    }
}
