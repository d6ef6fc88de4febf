//! Crate-wide error type.

use thiserror::Error;

/// Errors produced by the baseband chain and the scenario runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input has the wrong length for the operation.
    #[error("{what}: expected length {expected}, got {got}")]
    SizeMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    /// Input length must be a multiple of a block/period size.
    #[error("{what}: length {len} is not a multiple of {multiple}")]
    NotMultipleOf {
        what: &'static str,
        len: usize,
        multiple: usize,
    },

    /// A parameter is outside its valid range.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    /// Scenario configuration error, with the offending field path.
    #[error("config error at `{path}`: {reason}")]
    Config { path: String, reason: String },

    /// Reed-Solomon decoder detected an uncorrectable codeword.
    #[error("Reed-Solomon decode failure: {0}")]
    RsDecodeFailure(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParam {
            name,
            reason: reason.into(),
        }
    }

    pub(crate) fn config(path: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            reason: reason.into(),
        }
    }
}
