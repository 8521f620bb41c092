use thiserror::Error;

/// Errors raised while loading or validating a realization.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error("SchemaError: {0}")]
    Schema(String),
    #[error("PairingNotTwo: <alpha_check, alpha> = {value} for generator {generator}")]
    PairingNotTwo { generator: String, value: String },
    #[error("BraidFailure: (st)^m != id for s={s}, t={t}, m={m}")]
    BraidFailure { s: String, t: String, m: u32 },
    #[error("ZeroRoot: alpha vanishes for generator {0}")]
    ZeroRoot(String),
    #[error("IrrationalCosine: m({s},{t}) = {m} needs an irrational cosine")]
    IrrationalCosine { s: String, t: String, m: u32 },
    #[error("UnknownPreset: {0}")]
    UnknownPreset(String),
    #[error("UnsupportedField: F_{0} is not a supported prime field")]
    UnsupportedField(u64),
}

impl RealizationError {
    /// Machine-readable error name.
    pub fn code(&self) -> &'static str {
        match self {
            RealizationError::Schema(_) => "SchemaError",
            RealizationError::PairingNotTwo { .. } => "PairingNotTwo",
            RealizationError::BraidFailure { .. } => "BraidFailure",
            RealizationError::ZeroRoot(_) => "ZeroRoot",
            RealizationError::IrrationalCosine { .. } => "IrrationalCosine",
            RealizationError::UnknownPreset(_) => "UnknownPreset",
            RealizationError::UnsupportedField(_) => "UnsupportedField",
        }
    }
}
