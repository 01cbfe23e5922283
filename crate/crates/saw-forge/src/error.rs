use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An input violated a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Points or objects of different dimensions were mixed.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    /// A configured depth, size or memory bound would be exceeded.
    #[error("resource bound exceeded: {0}")]
    Resource(String),
    /// A joining surgery could not be carried out.
    #[error("join failed: {0}")]
    JoinFailure(String),
    /// The requested operation is not implemented for this dimension.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A conditional law has an empty conditioning event.
    #[error("undefined conditional: {0}")]
    UndefinedConditional(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
