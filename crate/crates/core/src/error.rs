use thiserror::Error;

/// Errors raised by the catx core library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The caller supplied a malformed or out-of-domain argument.
    #[error("invalid input: {0}")]
    Input(String),
    /// A computation would exceed one of the desk-scale guards.
    #[error("resource guard exceeded: {0}")]
    Resource(String),
    /// A serialized document could not be decoded.
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}

pub(crate) fn resource<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Resource(msg.into()))
}
