use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension too large: {0}")]
    DimensionTooLarge(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a quantum state: {0}")]
    NotAState(String),
    #[error("fidelity {0} is not distillable by the recurrence protocol (requires F > 1/2)")]
    NotDistillable(f64),
}

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}

pub(crate) fn mismatch<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::DimensionMismatch(msg.into()))
}
