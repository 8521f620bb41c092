//! JSON bundles for objects and decompositions.
//!
//! An object serializes its generator degrees, weight labels, weight coordinates, the right
//! action of each variable as a sparse matrix over `R`, the subsets `(S₁, S₂)` and, for a
//! summand, the images of its idempotent. Decompositions serialize as
//! `[{"coset": {...}, "shift": n, "multiplicity": m}]`.

use sbim_algebra::{Field, Poly};
use sbim_coxeter::{CoxeterGroup, DoubleCoset, Subset};
use sbim_schubert::poly_to_json;
use serde_json::{json, Map, Value};

use crate::decompose::Decomposition;
use crate::engine::Engine;
use crate::error::BimodError;
use crate::hom::Morphism;
use crate::singular::SingularObject;

fn subset_json(g: &CoxeterGroup, s: &Subset) -> Value {
    json!(g.subset_names(s))
}

/// `{"s1": [...], "s2": [...], "min": "ts", "max": "sts"}`.
pub fn coset_json(g: &CoxeterGroup, x: &DoubleCoset) -> Value {
    json!({
        "s1": subset_json(g, &x.s1),
        "s2": subset_json(g, &x.s2),
        "min": g.name(&x.min),
        "max": g.name(&x.max),
    })
}

/// Nonzero entries as `[row, column, polynomial]`.
fn sparse_matrix<F: Field>(m: &[Vec<Poly<F>>]) -> Value {
    let mut out = Vec::new();
    for (i, row) in m.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if !c.is_zero() {
                out.push(json!([i, j, poly_to_json(c)]));
            }
        }
    }
    Value::Array(out)
}

fn morphism_json<F: Field>(phi: &Morphism<F>) -> Value {
    json!({
        "degree": phi.degree,
        "images": phi.images.iter().map(|img| img.iter().map(poly_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

impl<F: Field> Engine<F> {
    /// The JSON bundle of `e·π_*N`.
    pub fn object_json(&self, v: &SingularObject<F>) -> Result<Value, BimodError> {
        let g = self.group();
        let m = &v.source;
        let n = self.nvars();
        let mut action = Map::new();
        for (i, name) in sbim_algebra::poly::default_names(n).into_iter().enumerate() {
            action.insert(name, sparse_matrix(&self.right_matrix(m, &Poly::var(n, i))?));
        }
        Ok(json!({
            "s1": subset_json(g, &v.s1),
            "s2": subset_json(g, &v.s2),
            "rank": m.rank(),
            "degrees": m.degrees,
            "weights": m.weights.iter().map(|w| g.name(w)).collect::<Vec<_>>(),
            "weight_degrees": m.col_deg,
            "weight_coords": sparse_matrix(&m.coords),
            "right_action": Value::Object(action),
            "idempotent": v.idem().map(morphism_json).unwrap_or(Value::Null),
        }))
    }

    /// `[{"coset": {...}, "shift": n, "multiplicity": m}]`, ordered by `(ℓ(x₋), x₋, n)`.
    pub fn decomposition_json(&self, d: &Decomposition<F>) -> Value {
        let g = self.group();
        Value::Array(
            d.multiplicities()
                .into_iter()
                .map(|(x, n, m)| json!({"coset": coset_json(g, &x), "shift": n, "multiplicity": m}))
                .collect(),
        )
    }
}
