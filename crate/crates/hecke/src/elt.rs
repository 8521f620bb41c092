//! Elements of the Hecke algebra in the standard basis `{H_w}`.

use std::collections::BTreeMap;

use sbim_algebra::Laurent;
use sbim_coxeter::{CoxeterGroup, Element, Subset};

use crate::error::HeckeError;

/// A finitely supported combination `Σ a_w H_w`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HeckeElt {
    terms: BTreeMap<Element, Laurent>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        HeckeElt::default()
    }

    /// `H_1`.
    pub fn one() -> Self {
        Self::basis(Element::identity())
    }

    /// `H_w`.
    pub fn basis(w: Element) -> Self {
        Self::term(w, Laurent::one())
    }

    /// `a H_w`.
    pub fn term(w: Element, a: Laurent) -> Self {
        let mut h = HeckeElt::zero();
        h.add_term(w, &a);
        h
    }

    pub fn add_term(&mut self, w: Element, a: &Laurent) {
        if a.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_default();
        *e += a;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Element) -> Laurent {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Element, &Laurent)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Element> {
        self.terms.keys()
    }

    /// Multiply every coefficient by `a`.
    pub fn scale(&self, a: &Laurent) -> Self {
        let mut h = HeckeElt::zero();
        for (w, c) in &self.terms {
            h.add_term(w.clone(), &(c * a));
        }
        h
    }

    /// Multiply every coefficient by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        HeckeElt { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.shift(k))).collect() }
    }

    pub fn add(&self, o: &HeckeElt) -> Self {
        let mut h = self.clone();
        for (w, c) in &o.terms {
            h.add_term(w.clone(), c);
        }
        h
    }

    pub fn sub(&self, o: &HeckeElt) -> Self {
        self.add(&o.scale(&Laurent::monomial(0, -1)))
    }

    /// `ε(h)`: the coefficient of `H_1`.
    pub fn eps(&self) -> Laurent {
        self.coeff(&Element::identity())
    }
}

fn quad() -> Laurent {
    // v^{-1} − v
    Laurent::from_terms([(-1, 1), (1, -1)])
}

/// Hecke algebra operations over a fixed Coxeter group.
pub struct Hecke<'g> {
    pub group: &'g CoxeterGroup,
}

impl<'g> Hecke<'g> {
    pub fn new(group: &'g CoxeterGroup) -> Self {
        Hecke { group }
    }

    pub fn gen(&self, s: usize) -> HeckeElt {
        HeckeElt::basis(self.group.gen(s))
    }

    /// `H_s · h`.
    pub fn lmul_gen(&self, s: usize, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        let mut out = HeckeElt::zero();
        for (w, c) in h.terms() {
            let sw = self.group.lmul_gen(s, w)?;
            out.add_term(sw.clone(), c);
            if sw.length() < w.length() {
                out.add_term(w.clone(), &(c * &quad()));
            }
        }
        Ok(out)
    }

    /// `h · H_s`.
    pub fn rmul_gen(&self, h: &HeckeElt, s: usize) -> Result<HeckeElt, HeckeError> {
        let mut out = HeckeElt::zero();
        for (w, c) in h.terms() {
            let ws = self.group.rmul_gen(w, s)?;
            out.add_term(ws.clone(), c);
            if ws.length() < w.length() {
                out.add_term(w.clone(), &(c * &quad()));
            }
        }
        Ok(out)
    }

    /// Product, by left multiplication with the generators of each reduced word of `a`.
    pub fn mul(&self, a: &HeckeElt, b: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        let mut out = HeckeElt::zero();
        for (w, c) in a.terms() {
            let mut t = b.clone();
            for &s in w.word().iter().rev() {
                t = self.lmul_gen(s as usize, &t)?;
            }
            out = out.add(&t.scale(c));
        }
        Ok(out)
    }

    /// Product of several factors, left to right.
    pub fn mul_all(&self, factors: &[HeckeElt]) -> Result<HeckeElt, HeckeError> {
        let mut acc = HeckeElt::one();
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// `H_s^{-1} · h`.
    fn lmul_gen_inv(&self, s: usize, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        let hs = self.lmul_gen(s, h)?;
        Ok(hs.add(&h.scale(&Laurent::from_terms([(1, 1), (-1, -1)]))))
    }

    /// `H_w^{-1} = H_{s_k}^{-1} ⋯ H_{s_1}^{-1}` for `w = s_1 ⋯ s_k`.
    pub fn inverse_basis(&self, w: &Element) -> Result<HeckeElt, HeckeError> {
        let mut t = HeckeElt::one();
        // Build from the right: H_{s_k}^{-1}(⋯(H_{s_1}^{-1}·1)).
        for &s in w.word() {
            t = self.lmul_gen_inv(s as usize, &t)?;
        }
        Ok(t)
    }

    /// Bar involution: `Σ a_w H_w ↦ Σ ā_w H_{w^{-1}}^{-1}`.
    pub fn bar(&self, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        let mut out = HeckeElt::zero();
        for (w, c) in h.terms() {
            let winv = self.group.inv(w);
            out = out.add(&self.inverse_basis(&winv)?.scale(&c.bar()));
        }
        Ok(out)
    }

    /// `ω(Σ a_w H_w) = Σ ā_w H_w^{-1}`.
    pub fn omega(&self, h: &HeckeElt) -> Result<HeckeElt, HeckeError> {
        let mut out = HeckeElt::zero();
        for (w, c) in h.terms() {
            out = out.add(&self.inverse_basis(w)?.scale(&c.bar()));
        }
        Ok(out)
    }

    pub fn eps(&self, h: &HeckeElt) -> Laurent {
        h.eps()
    }

    /// `ε̄(h) = \overline{ε(h̄)}`.
    pub fn bar_eps(&self, h: &HeckeElt) -> Result<Laurent, HeckeError> {
        Ok(self.bar(h)?.eps().bar())
    }

    /// `H̲_{w_I} = Σ_{w ∈ W_I} v^{ℓ(w_I) − ℓ(w)} H_w`.
    pub fn longest_kl(&self, subset: Subset) -> Result<HeckeElt, HeckeError> {
        let p = self.group.parabolic(subset)?;
        let top = p.longest_length() as i32;
        let mut h = HeckeElt::zero();
        for w in &p.elements {
            h.add_term(w.clone(), &Laurent::v_pow(top - w.length() as i32));
        }
        Ok(h)
    }

    /// `Σ_{w ∈ W_I} v^{ℓ(w_I) − 2ℓ(w)}`, the normalizing factor of `*_I`.
    pub fn poincare(&self, subset: Subset) -> Result<Laurent, HeckeError> {
        let p = self.group.parabolic(subset)?;
        let top = p.longest_length() as i32;
        Ok(Laurent::from_terms(p.elements.iter().map(|w| (top - 2 * w.length() as i32, 1))))
    }

    /// `Σ_{w ∈ W_I} v^{−2ℓ(w)}`: the graded rank of `R` over `R^I`.
    pub fn poincare_neg(&self, subset: Subset) -> Result<Laurent, HeckeError> {
        let p = self.group.parabolic(subset)?;
        Ok(Laurent::from_terms(p.elements.iter().map(|w| (-2 * w.length() as i32, 1))))
    }
}
