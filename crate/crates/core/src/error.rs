use thiserror::Error;

/// Errors raised by constructors, oracles and checkers.
///
/// Law violations are not errors; they are collected into a [`crate::Report`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: non-total tables, mismatched families, unknown tokens.
    #[error("structural error: {0}")]
    Structural(String),
    /// Input data that parses but fails the laws its kind requires.
    #[error("validation error: {0}")]
    Validation(String),
    /// An operation needed an arity or apex larger than the configured bound.
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    /// A constructive step that the theory guarantees failed. Indicates a bug.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn structural(msg: impl Into<String>) -> Error {
    Error::Structural(msg.into())
}

pub(crate) fn bound(msg: impl Into<String>) -> Error {
    Error::BoundExceeded(msg.into())
}

/// `Ok(None)` for a bound error, so callers can skip instances out of range.
pub fn within<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(t) => Ok(Some(t)),
        Err(e) if e.is_bound() => Ok(None),
        Err(e) => Err(e),
    }
}

impl Error {
    pub fn is_bound(&self) -> bool {
        matches!(self, Error::BoundExceeded(_))
    }
}
