//! The graded polynomial ring `R = Sym(V)` with its `W`-action and Demazure operators.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use sbim_algebra::linalg::{kernel, sparsify, SparseVec};
use sbim_algebra::{monomials, Field, Poly};
use sbim_coxeter::{CoxeterGroup, Element, Subset};
use sbim_realization::Realization;

use crate::error::SchubertError;
use crate::frobenius::FrobeniusData;

/// Schubert calculus over a fixed realization.
///
/// Polynomial variables are the coordinates of `V`, so `e_i` has graded degree 2 and a
/// polynomial of (ordinary) degree `d` sits in graded degree `2d`.
pub struct Schubert<F: Field> {
    pub real: Realization<F>,
    pub group: Arc<CoxeterGroup>,
    roots: Vec<Poly<F>>,
    images: Mutex<HashMap<Element, Arc<Vec<Poly<F>>>>>,
    invariants: Mutex<HashMap<(Subset, usize), Arc<Vec<Poly<F>>>>>,
    pub(crate) frobenius: Mutex<HashMap<Subset, Arc<FrobeniusData<F>>>>,
}

impl<F: Field> Schubert<F> {
    pub fn new(real: Realization<F>, group: Arc<CoxeterGroup>) -> Self {
        let roots = (0..real.rank()).map(|s| real.root_poly(s)).collect();
        Schubert {
            real,
            group,
            roots,
            images: Mutex::new(HashMap::new()),
            invariants: Mutex::new(HashMap::new()),
            frobenius: Mutex::new(HashMap::new()),
        }
    }

    /// Schubert calculus with a freshly built group of the realization's Coxeter data.
    pub fn for_realization(real: Realization<F>) -> Result<Self, SchubertError> {
        let group = CoxeterGroup::new(real.coxeter.clone()).map_err(sbim_coxeter::CoxeterError::from)?;
        Ok(Self::new(real, Arc::new(group)))
    }

    /// Number of polynomial variables (`dim V`).
    pub fn nvars(&self) -> usize {
        self.real.dim_v
    }

    /// `α_s` as a polynomial.
    pub fn root(&self, s: usize) -> &Poly<F> {
        &self.roots[s]
    }

    pub fn zero(&self) -> Poly<F> {
        Poly::zero(self.nvars())
    }

    pub fn one(&self) -> Poly<F> {
        Poly::one(self.nvars())
    }

    /// Images `w(e_j)`: the columns of the matrix of `w`.
    fn images(&self, w: &Element) -> Arc<Vec<Poly<F>>> {
        if let Some(v) = self.images.lock().unwrap().get(w) {
            return v.clone();
        }
        let m = self.real.word_matrix(w.word());
        let n = self.nvars();
        let cols: Vec<Poly<F>> =
            (0..n).map(|j| Poly::linear(&(0..n).map(|i| m[i][j].clone()).collect::<Vec<_>>())).collect();
        let cols = Arc::new(cols);
        self.images.lock().unwrap().insert(w.clone(), cols.clone());
        cols
    }

    /// `w(f)`.
    pub fn act(&self, w: &Element, f: &Poly<F>) -> Poly<F> {
        if w.is_identity() {
            return f.clone();
        }
        f.substitute(&self.images(w))
    }

    /// `s(f)` for a generator.
    pub fn act_gen(&self, s: usize, f: &Poly<F>) -> Poly<F> {
        self.act(&Element::generator(s), f)
    }

    /// `∂_s(f) = (f − s(f))/α_s`.
    pub fn demazure(&self, s: usize, f: &Poly<F>) -> Result<Poly<F>, SchubertError> {
        let num = f - &self.act_gen(s, f);
        num.div_exact(&self.roots[s]).ok_or_else(|| {
            SchubertError::InexactDivision(format!("∂_{} of a polynomial", self.real.coxeter.name(s)))
        })
    }

    /// `∂_{s₁}⋯∂_{s_l}(f)`, the rightmost operator applied first.
    pub fn demazure_word(&self, word: &[u8], f: &Poly<F>) -> Result<Poly<F>, SchubertError> {
        let mut g = f.clone();
        for &s in word.iter().rev() {
            if g.is_zero() {
                break;
            }
            g = self.demazure(s as usize, &g)?;
        }
        Ok(g)
    }

    /// `∂_w` along the canonical reduced word of `w`.
    pub fn demazure_element(&self, w: &Element, f: &Poly<F>) -> Result<Poly<F>, SchubertError> {
        self.demazure_word(w.word(), f)
    }

    /// Whether `f` is fixed by every generator in `subset`.
    pub fn is_invariant(&self, subset: Subset, f: &Poly<F>) -> bool {
        subset.iter().all(|s| self.act_gen(s, f) == *f)
    }

    /// Basis of the `W_I`-invariants of polynomial degree `d`, as the common kernel of
    /// `s − id` for `s ∈ I` on the monomial basis.
    pub fn invariants(&self, subset: Subset, d: usize) -> Arc<Vec<Poly<F>>> {
        if let Some(v) = self.invariants.lock().unwrap().get(&(subset, d)) {
            return v.clone();
        }
        let n = self.nvars();
        let basis = monomials(n, d);
        let gens: Vec<usize> = subset.iter().collect();
        let out: Vec<Poly<F>> = if gens.is_empty() {
            basis.monos.iter().map(|m| Poly::monomial(n, *m, F::one())).collect()
        } else {
            let len = basis.len();
            let images: Vec<SparseVec<F>> = basis
                .monos
                .iter()
                .map(|m| {
                    let p = Poly::monomial(n, *m, F::one());
                    let mut v = Vec::with_capacity(len * gens.len());
                    for &s in &gens {
                        v.extend((&self.act_gen(s, &p) - &p).coords_in_degree(d));
                    }
                    sparsify(&v)
                })
                .collect();
            kernel(len * gens.len(), &images)
                .into_iter()
                .map(|k| Poly::from_terms(n, k.into_iter().map(|(i, c)| (basis.monos[i], c))))
                .collect()
        };
        let out = Arc::new(out);
        self.invariants.lock().unwrap().insert((subset, d), out.clone());
        out
    }

    /// Dimensions of `(R^{W_I})` in polynomial degrees `0..=dmax`.
    pub fn invariant_dims(&self, subset: Subset, dmax: usize) -> Vec<usize> {
        (0..=dmax).map(|d| self.invariants(subset, d).len()).collect()
    }

    /// Whether the parabolic subgroup `W_I` acts faithfully on `V`.
    pub fn is_faithful(&self, subset: Subset) -> Result<bool, SchubertError> {
        let p = self.group.parabolic(subset)?;
        let id = sbim_realization::identity::<F>(self.nvars());
        Ok(p.elements.iter().skip(1).all(|w| self.real.word_matrix(w.word()) != id))
    }

    /// Product of the roots `α_t` over the reflections `t ∈ W_I`, with the fixed choice of `(w,s)`.
    pub fn root_product(&self, subset: Subset) -> Result<Poly<F>, SchubertError> {
        let mut out = self.one();
        for t in self.group.parabolic_reflections(subset)? {
            out = &out * &Poly::linear(&t.root_in(&self.real));
        }
        Ok(out)
    }
}
