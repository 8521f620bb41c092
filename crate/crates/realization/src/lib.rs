//! Realizations `(V, {(α_s, α_s^∨)})` of Coxeter groups over exact fields.
//!
//! A realization is validated on construction: pairings equal 2, roots are
//! nonzero and the braid relations hold on `V`. Presets cover the small
//! crystallographic types used throughout the workspace.

mod config;
mod data;
mod error;

pub use config::{
    load_realization, parse_field_name, preset_doc, AnyRealization, FieldSpec, FieldTag, MEntry, RatEntry,
    RealizationDoc, PRESETS,
};
pub use data::{geometric_cartan, geometric_representation, identity, mat_mul, CoxeterData, Realization};
pub use error::RealizationError;
