//! Command errors: usage mistakes (exit 2) and domain errors (exit 1) carrying the module
//! error name verbatim.

use sbim_bimod::BimodError;
use sbim_coxeter::CoxeterError;
use sbim_hecke::HeckeError;
use sbim_realization::RealizationError;
use sbim_schubert::SchubertError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{message}")]
    Domain { code: String, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// A domain error; `code: ` prefixes repeated by nested module errors are dropped.
    pub fn domain(code: &str, message: impl Into<String>) -> Self {
        let mut message: String = message.into();
        let prefix = format!("{code}: ");
        while let Some(rest) = message.strip_prefix(&prefix) {
            message = rest.to_string();
        }
        CliError::Domain { code: code.to_string(), message }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain { .. } => 1,
        }
    }

    /// Machine-readable error name.
    pub fn code(&self) -> &str {
        match self {
            CliError::Usage(_) => "UsageError",
            CliError::Domain { code, .. } => code,
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::domain(e.code(), e.to_string())
            }
        }
    )*};
}

domain_from!(RealizationError, CoxeterError, HeckeError, SchubertError, BimodError);
