//! Schubert calculus on `R = Sym(V)`: the `W`-action, Demazure operators, the Assumption
//! check, Demazure and dual bases over invariants, and `R ⊗_{R^{S₁}} R` in `φ`-coordinates.

pub mod calc;
pub mod error;
pub mod frobenius;
pub mod phi;

pub use calc::Schubert;
pub use error::SchubertError;
pub use frobenius::{AssumptionReport, FrobeniusData};
pub use phi::{Membership, PhiTuple};

use sbim_algebra::poly::default_names;
use sbim_algebra::{Field, Poly};
use serde_json::{Map, Value};

/// Sparse monomial map `{"e1^2 e2": "1"}`.
pub fn poly_to_json<F: Field>(f: &Poly<F>) -> Value {
    let names = default_names(f.nvars());
    let mut m = Map::new();
    for (mono, c) in f.terms().rev() {
        m.insert(mono.render(&names), Value::String(c.to_string()));
    }
    Value::Object(m)
}

/// Inverse of [`poly_to_json`].
pub fn poly_from_json<F: Field>(nvars: usize, v: &Value) -> Option<Poly<F>> {
    let names = default_names(nvars);
    let mut out = Poly::zero(nvars);
    for (k, c) in v.as_object()? {
        let mono = Poly::<F>::parse(nvars, &names, k)?;
        out = out + mono.scale(&F::parse(c.as_str()?)?);
    }
    Some(out)
}
