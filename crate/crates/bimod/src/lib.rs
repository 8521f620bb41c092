//! Graded bimodule engine: regular Soergel-type objects with localization data, Frobenius
//! and Bott–Samelson objects, tensor products, truncations and characters, push-forward,
//! pull-back and convolution of singular objects, duality, morphism spaces and decomposition
//! into indecomposables.

pub mod decompose;
pub mod dual;
pub mod engine;
pub mod error;
pub mod grk;
pub mod hom;
pub mod json;
pub mod object;
pub mod singular;
pub mod stalk;

pub use decompose::{Decomposition, Summand};
pub use engine::Engine;
pub use error::BimodError;
pub use hom::{HomLayout, HomSpace, Morphism};
pub use json::coset_json;
pub use object::RegularObject;
pub use singular::SingularObject;
