use thiserror::Error;

/// Failures raised by the numerical routines of this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gamma pole at argument {0}")]
    Pole(f64),
    #[error("inadmissible parameters: {0}")]
    InadmissibleParam(String),
    #[error("node iteration did not converge: {0}")]
    Convergence(String),
    #[error("point {x} outside the domain: {reason}")]
    Domain { x: f64, reason: String },
    #[error("coefficient family mismatch: {0}")]
    FamilyMismatch(String),
    #[error("right-hand side quadrature did not settle: {0}")]
    SingularQuadrature(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn inadmissible(msg: impl Into<String>) -> Error {
    Error::InadmissibleParam(msg.into())
}
