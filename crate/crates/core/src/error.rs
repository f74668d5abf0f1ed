use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside its documented range.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A dense object would exceed the configured materialization cap.
    #[error("size {requested} exceeds the dense materialization cap {cap}")]
    Capacity { requested: usize, cap: usize },

    /// The inputs are valid on their own but the requested formula is not
    /// defined for them.
    #[error("outside domain: {0}")]
    Domain(String),

    /// An iterative method failed to converge.
    #[error("numerical failure at index {index}: {detail}")]
    Numerical { index: usize, detail: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn param<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parameter(msg.into()))
}

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
