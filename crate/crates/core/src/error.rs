use thiserror::Error;

use crate::magnitude::MagnitudeError;
use crate::table::ValidationReport;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RpfError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("outcome {index} out of range for {k} outcomes")]
    OutOfRange { index: usize, k: usize },
    #[error("axiom violation: {0}")]
    Axioms(ValidationReport),
    #[error("not totally comparable: outcomes {0} and {1} are incomparable")]
    NotTotallyComparable(usize, usize),
    #[error("not anchored: no outcome is possible with respect to every other")]
    NotAnchored,
    #[error("event is empty")]
    EmptyEvent,
    #[error("outcome space is empty")]
    EmptySpace,
    #[error("path is empty")]
    EmptyPath,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("invalid classed representation: {0}")]
    InvalidClassed(String),
    #[error(transparent)]
    Magnitude(#[from] MagnitudeError),
}

pub type Result<T, E = RpfError> = std::result::Result<T, E>;
