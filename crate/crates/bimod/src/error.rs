use sbim_coxeter::CoxeterError;
use sbim_hecke::HeckeError;
use sbim_schubert::SchubertError;
use thiserror::Error;

/// Errors from the bimodule engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BimodError {
    #[error("DegreeBoundTooSmall: {what} did not stabilize up to degree {bound}")]
    DegreeBoundTooSmall { what: String, bound: i32 },
    #[error("NotFree: {0}")]
    NotFree(String),
    #[error("NotRightFree: {0}")]
    NotRightFree(String),
    #[error("MiddleMismatch: left object ends in {left:?}, right object starts in {right:?}")]
    MiddleMismatch { left: Vec<String>, right: Vec<String> },
    #[error("SubsetMismatch: {0}")]
    SubsetMismatch(String),
    #[error("IdempotentSplitFailure: {0}")]
    IdempotentSplitFailure(String),
    #[error("Unsupported: {0}")]
    Unsupported(String),
    #[error("NotInLattice: {0}")]
    NotInLattice(String),
    #[error(transparent)]
    Schubert(#[from] SchubertError),
    #[error(transparent)]
    Hecke(#[from] HeckeError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

impl BimodError {
    /// Machine-readable error name.
    pub fn code(&self) -> &'static str {
        match self {
            BimodError::DegreeBoundTooSmall { .. } => "DegreeBoundTooSmall",
            BimodError::NotFree(_) => "NotFree",
            BimodError::NotRightFree(_) => "NotRightFree",
            BimodError::MiddleMismatch { .. } => "MiddleMismatch",
            BimodError::SubsetMismatch(_) => "SubsetMismatch",
            BimodError::IdempotentSplitFailure(_) => "IdempotentSplitFailure",
            BimodError::Unsupported(_) => "Unsupported",
            BimodError::NotInLattice(_) => "NotInLattice",
            BimodError::Schubert(e) => e.code(),
            BimodError::Hecke(e) => e.code(),
            BimodError::Coxeter(e) => e.code(),
        }
    }
}
