use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid Bell label `{0}` (expected one of 00, 01, 10, 11)")]
    InvalidLabel(String),

    #[error("label {0} has no closed form; use the matrix path")]
    MatrixPathOnly(&'static str),

    #[error("momentum is not in the x-z plane (sin φ = {0:e})")]
    NotInPlane(f64),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
