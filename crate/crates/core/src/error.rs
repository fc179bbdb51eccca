use thiserror::Error;

use crate::dsl::Diagnostic;
use crate::report::LawReport;

/// Errors produced by constructors and derivations.
///
/// Law failures of a *candidate* structure are not errors: the `check_*`
/// functions return a [`LawReport`]. An `Error::Law` only appears when a
/// constructor is asked to build a value from data that fails its laws.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("base quantale mismatch: {0} vs {1}")]
    BaseMismatch(String, String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("resource guard `{guard}` exceeded: need {needed}, limit {limit}")]
    Resource {
        guard: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("law violation: {0}")]
    Law(LawReport),

    #[error("not cocomplete: presheaf {witness:?} has no supremum")]
    NotCocomplete { witness: Vec<usize> },

    #[error("parse error: {}", .0.first().map(|d| d.to_string()).unwrap_or_default())]
    Parse(Vec<Diagnostic>),

    /// An internal consistency assertion failed. Always a bug.
    #[error("internal invariant broken: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
