use std::io;

use thiserror::Error;

/// Errors raised by generators, noise, centrality, bound evaluation and the
/// experiment harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter violates an operation's precondition. The first field
    /// names the parameter.
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A closed-form bound cannot be evaluated for these inputs
    /// (for example a non-positive variance proxy or a violated gap).
    #[error("bound inapplicable: {0}")]
    Inapplicable(String),

    /// Malformed edge-list or configuration text.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Configuration schema violation, naming the offending field.
    #[error("config field `{field}`: {message}")]
    Config { field: String, message: String },

    /// An internal invariant failed (a bug, not a user error).
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors caused by bad input rather than the environment.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter { .. }
                | Error::Inapplicable(_)
                | Error::Parse { .. }
                | Error::Config { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
