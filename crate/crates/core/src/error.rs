use thiserror::Error;

/// Failure classes shared by every solver, verifier and generator.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input: dimension mismatch, bad syntax, a cycle that is not a cycle.
    #[error("input error: {0}")]
    Input(String),
    /// The input is well formed but outside the operation's domain (not a surface, disconnected, ...).
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// An enumeration or elimination would exceed its configured budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    /// An invariant the algorithms guarantee was observed to fail.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
