use sbim_coxeter::CoxeterError;
use thiserror::Error;

/// Errors from Schubert calculus.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchubertError {
    #[error("InexactDivision: {0}")]
    InexactDivision(String),
    #[error("AssumptionFailed: no p with unit top Demazure image for subset {{{0}}}")]
    AssumptionFailed(String),
    #[error("SingularTransition: {0}")]
    SingularTransition(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

impl SchubertError {
    /// Machine-readable error name.
    pub fn code(&self) -> &'static str {
        match self {
            SchubertError::InexactDivision(_) => "InexactDivision",
            SchubertError::AssumptionFailed(_) => "AssumptionFailed",
            SchubertError::SingularTransition(_) => "SingularTransition",
            SchubertError::Coxeter(e) => e.code(),
        }
    }
}
