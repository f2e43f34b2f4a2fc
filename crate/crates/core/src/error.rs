use thiserror::Error;

/// Every failure mode of the library. Variants map onto the error classes of
/// the operation contracts; the CLI turns all of them into exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("membership error: {0}")]
    Membership(String),
    #[error("resource cap exceeded: {0}")]
    Resource(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("singular model: {0}")]
    SingularModel(String),
    #[error("characteristic error: {0}")]
    Characteristic(String),
    #[error("invalid basis: {0}")]
    InvalidBasis(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
