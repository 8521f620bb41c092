use sbim_realization::RealizationError;
use thiserror::Error;

/// Errors from group arithmetic.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("LengthBoundExceeded: element of length {length} exceeds bound {bound}")]
    LengthBoundExceeded { bound: usize, length: usize },
    #[error("UnknownGenerator: cannot parse {0:?}")]
    UnknownGenerator(String),
    #[error("NotFinitary: subset {0} generates an infinite (or too large) group")]
    NotFinitary(String),
    #[error(transparent)]
    Realization(#[from] RealizationError),
}

impl CoxeterError {
    /// Machine-readable error name.
    pub fn code(&self) -> &'static str {
        match self {
            CoxeterError::LengthBoundExceeded { .. } => "LengthBoundExceeded",
            CoxeterError::UnknownGenerator(_) => "UnknownGenerator",
            CoxeterError::NotFinitary(_) => "NotFinitary",
            CoxeterError::Realization(e) => e.code(),
        }
    }
}
