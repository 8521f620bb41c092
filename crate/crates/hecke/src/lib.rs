//! The Hecke algebra of a Coxeter system, its singular bimodules `₍S₁₎ℋ₍S₂₎`, the bar
//! involution, and the character-level predictions for singular Soergel bimodules.

pub mod elt;
pub mod error;
pub mod parse;
pub mod singular;

pub use elt::{Hecke, HeckeElt};
pub use error::HeckeError;
pub use singular::SingularHeckeElt;
