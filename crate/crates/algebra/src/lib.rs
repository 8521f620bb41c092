//! Exact arithmetic shared by the workspace: coefficient fields, sparse
//! multivariate polynomials, integer Laurent polynomials and sparse linear algebra.

pub mod field;
pub mod laurent;
pub mod linalg;
pub mod poly;

pub use field::{Field, Fp, Q};
pub use laurent::Laurent;
pub use linalg::{Echelon, Insert, SparseVec};
pub use poly::{monomials, Mono, Poly};

/// The prime field of order 2.
pub type F2 = Fp<2>;
/// The prime field of order 3.
pub type F3 = Fp<3>;
/// The prime field of order 5.
pub type F5 = Fp<5>;
/// The prime field of order 7.
pub type F7 = Fp<7>;
/// The prime field of order 11.
pub type F11 = Fp<11>;
/// The prime field of order 13.
pub type F13 = Fp<13>;
/// The prime field of order 2^31 - 1.
pub type FBig = Fp<2147483647>;
