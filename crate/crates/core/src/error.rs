use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    #[error("unsupported alphabet: operation requires n = 2, got n = {0}")]
    UnsupportedAlphabet(usize),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inconsistent decomposition: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
