use sbim_coxeter::CoxeterError;
use thiserror::Error;

/// Errors from Hecke algebra computations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HeckeError {
    #[error("NotInParabolicModule: coefficient of H_{element} is {found}, expected {expected}")]
    NotInParabolicModule { element: String, found: String, expected: String },
    #[error("MiddleMismatch: left factor ends in {left:?}, right factor starts in {right:?}")]
    MiddleMismatch { left: Vec<String>, right: Vec<String> },
    #[error("NotDivisible: product is not divisible by the Poincaré factor at H_{0}")]
    NotDivisible(String),
    #[error("NonUnitriangularBar: bar-invariance fails at coset {0}")]
    NonUnitriangularBar(String),
    #[error("ParseError: {0}")]
    Parse(String),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}

impl HeckeError {
    /// Machine-readable error name.
    pub fn code(&self) -> &'static str {
        match self {
            HeckeError::NotInParabolicModule { .. } => "NotInParabolicModule",
            HeckeError::MiddleMismatch { .. } => "MiddleMismatch",
            HeckeError::NotDivisible(_) => "NotDivisible",
            HeckeError::NonUnitriangularBar(_) => "NonUnitriangularBar",
            HeckeError::Parse(_) => "ParseError",
            HeckeError::Coxeter(e) => e.code(),
        }
    }
}
