//! Coxeter groups: ShortLex normal forms computed in the faithful reference
//! representation, Bruhat order, reflections, finitary parabolic subgroups and
//! `(S₁,S₂)`-double cosets with their order and products.

mod cosets;
mod error;
mod group;

pub use cosets::{DoubleCoset, Parabolic, Reflection};
pub use error::CoxeterError;
pub use group::{CoxeterGroup, Element, Subset, ENUMERATION_CAP, FINITENESS_LENGTH_CAP};
