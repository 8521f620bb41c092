//! Finitary parabolic subgroups, double cosets, their order and products, and reflections.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use sbim_algebra::Field;
use sbim_realization::Realization;

use crate::error::CoxeterError;
use crate::group::{CoxeterGroup, Element, Subset, ENUMERATION_CAP, FINITENESS_LENGTH_CAP};

/// A finitary parabolic subgroup `W_I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parabolic {
    pub subset: Subset,
    /// All elements in ShortLex order.
    pub elements: Vec<Element>,
    /// The longest element `w_I`.
    pub longest: Element,
}

impl Parabolic {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn longest_length(&self) -> usize {
        self.longest.length()
    }
}

/// A double coset `W_{S₁} x W_{S₂}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleCoset {
    /// The minimal representative `x₋` (first field so that the derived order follows it).
    pub min: Element,
    pub max: Element,
    pub s1: Subset,
    pub s2: Subset,
    /// Members in ShortLex order.
    pub members: Vec<Element>,
}

impl DoubleCoset {
    pub fn contains(&self, w: &Element) -> bool {
        self.members.binary_search(w).is_ok()
    }
}

/// A reflection `t = w s w^{-1}` with the pair `(w, s)` fixing its root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reflection {
    pub element: Element,
    pub w: Element,
    pub s: usize,
}

impl Reflection {
    /// `α_t = w(α_s)` in the given realization.
    pub fn root_in<F: Field>(&self, r: &Realization<F>) -> Vec<F> {
        Realization::apply(&r.word_matrix(self.w.word()), &r.alpha[self.s])
    }
}

impl CoxeterGroup {
    /// The parabolic subgroup generated by `subset`; errors unless it is finite.
    pub fn parabolic(&self, subset: Subset) -> Result<Arc<Parabolic>, CoxeterError> {
        if let Some(p) = self.parabolic_cache.lock().unwrap().get(&subset) {
            return Ok(p.clone());
        }
        let mut out = vec![Element::identity()];
        let mut level = vec![Element::identity()];
        loop {
            let mut next = HashSet::new();
            for w in &level {
                for s in subset.iter() {
                    let ws = self.normalize(&[w.word(), &[s as u8][..]].concat());
                    if ws.length() > w.length() {
                        next.insert(ws);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            let mut next: Vec<Element> = next.into_iter().collect();
            next.sort();
            out.extend(next.iter().cloned());
            if out.len() > ENUMERATION_CAP || next[0].length() > FINITENESS_LENGTH_CAP {
                return Err(CoxeterError::NotFinitary(self.subset_names(&subset).join("")));
            }
            level = next;
        }
        let longest = out.last().unwrap().clone();
        let p = Arc::new(Parabolic { subset, elements: out, longest });
        self.parabolic_cache.lock().unwrap().insert(subset, p.clone());
        Ok(p)
    }

    /// Whether `subset` generates a finite group.
    pub fn is_finitary(&self, subset: Subset) -> bool {
        self.parabolic(subset).is_ok()
    }

    /// Minimal representative of `W_{S₁} w W_{S₂}` by stripping descents.
    pub fn min_rep(&self, w: &Element, s1: Subset, s2: Subset) -> Element {
        let mut w = w.clone();
        'outer: loop {
            for s in s1.iter() {
                if self.is_left_descent(&w, s) {
                    w = self.normalize(&[&[s as u8][..], w.word()].concat());
                    continue 'outer;
                }
            }
            for s in s2.iter() {
                if self.is_right_descent(&w, s) {
                    w = self.normalize(&[w.word(), &[s as u8][..]].concat());
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// The double coset containing `w`.
    pub fn double_coset(&self, w: &Element, s1: Subset, s2: Subset) -> Result<DoubleCoset, CoxeterError> {
        let p1 = self.parabolic(s1)?;
        let p2 = self.parabolic(s2)?;
        let min = self.min_rep(w, s1, s2);
        let mut members = BTreeSet::new();
        for u in &p1.elements {
            let ux = self.mul(u, &min)?;
            for v in &p2.elements {
                members.insert(self.mul(&ux, v)?);
            }
        }
        let members: Vec<Element> = members.into_iter().collect();
        let max = members.last().unwrap().clone();
        Ok(DoubleCoset { min, max, s1, s2, members })
    }

    /// All `(S₁,S₂)`-double cosets (for infinite groups: those whose minimal
    /// representative lies within the length bound), ordered by `x₋` in ShortLex.
    pub fn double_cosets(&self, s1: Subset, s2: Subset) -> Result<Vec<DoubleCoset>, CoxeterError> {
        let mut out = Vec::new();
        for w in self.bounded_elements() {
            if s1.iter().any(|s| self.is_left_descent(&w, s)) || s2.iter().any(|s| self.is_right_descent(&w, s)) {
                continue;
            }
            out.push(self.double_coset(&w, s1, s2)?);
        }
        out.sort();
        Ok(out)
    }

    /// Coset order: `x ≤ y` iff `x₋ ≤ y₋` in the Bruhat order.
    pub fn coset_leq(&self, x: &DoubleCoset, y: &DoubleCoset) -> bool {
        self.bruhat_leq(&x.min, &y.min)
    }

    /// Whether `set` is open (upward closed) inside `universe`.
    pub fn is_open(&self, set: &[DoubleCoset], universe: &[DoubleCoset]) -> bool {
        set.iter().all(|x| universe.iter().all(|y| !self.coset_leq(x, y) || set.contains(y)))
    }

    /// Whether `set` is closed (downward closed) inside `universe`.
    pub fn is_closed(&self, set: &[DoubleCoset], universe: &[DoubleCoset]) -> bool {
        set.iter().all(|x| universe.iter().all(|y| !self.coset_leq(y, x) || set.contains(y)))
    }

    /// The `(S₁,S₃)`-double cosets meeting the product set `xy`.
    pub fn coset_product(&self, x: &DoubleCoset, y: &DoubleCoset) -> Result<Vec<DoubleCoset>, CoxeterError> {
        if x.s2 != y.s1 {
            return Err(CoxeterError::UnknownGenerator("middle subsets differ".into()));
        }
        let mut mins = BTreeSet::new();
        for a in &x.members {
            for b in &y.members {
                mins.insert(self.min_rep(&self.mul(a, b)?, x.s1, y.s2));
            }
        }
        mins.iter().map(|m| self.double_coset(m, x.s1, y.s2)).collect()
    }

    /// The product set `xy` as elements.
    pub fn product_set(&self, x: &DoubleCoset, y: &DoubleCoset) -> Result<BTreeSet<Element>, CoxeterError> {
        let mut out = BTreeSet::new();
        for a in &x.members {
            for b in &y.members {
                out.insert(self.mul(a, b)?);
            }
        }
        Ok(out)
    }

    /// `W_{S₁} ∩ x₋ W_{S₂} x₋^{-1}` as a list of elements.
    pub fn coset_stabilizer(&self, x: &DoubleCoset) -> Result<Vec<Element>, CoxeterError> {
        let p1 = self.parabolic(x.s1)?;
        let p2 = self.parabolic(x.s2)?;
        let xinv = self.inv(&x.min);
        let mut out = Vec::new();
        for u in &p1.elements {
            let c = self.mul(&self.mul(&xinv, u)?, &x.min)?;
            if p2.elements.binary_search(&c).is_ok() {
                out.push(u.clone());
            }
        }
        Ok(out)
    }

    /// Reflections of length ≤ `bound` (all of them for finite groups when `bound` is `None`),
    /// each with the ShortLex-first pair `(w, s)`.
    pub fn reflections(&self, bound: Option<usize>) -> Vec<Reflection> {
        let elements = match bound {
            Some(b) => self.elements_up_to(b),
            None => self.bounded_elements(),
        };
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for w in &elements {
            for s in 0..self.rank() {
                let t = self.normalize(&[w.word(), &[s as u8][..], self.inv(w).word()].concat());
                if bound.is_some_and(|b| t.length() > b) {
                    continue;
                }
                if seen.insert(t.clone()) {
                    out.push(Reflection { element: t, w: w.clone(), s });
                }
            }
        }
        out
    }

    /// Reflections lying in the parabolic subgroup `W_I`.
    pub fn parabolic_reflections(&self, subset: Subset) -> Result<Vec<Reflection>, CoxeterError> {
        let p = self.parabolic(subset)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for w in &p.elements {
            for s in subset.iter() {
                let t = self.normalize(&[w.word(), &[s as u8][..], self.inv(w).word()].concat());
                if seen.insert(t.clone()) {
                    out.push(Reflection { element: t, w: w.clone(), s });
                }
            }
        }
        Ok(out)
    }
}
