//! Singular Hecke bimodules `₍S₁₎ℋ₍S₂₎` in the basis `{^{S₁}H^{S₂}_x}`.

use std::collections::{BTreeMap, HashMap};

use sbim_algebra::Laurent;
use sbim_coxeter::{DoubleCoset, Element, Subset};

use crate::elt::{Hecke, HeckeElt};
use crate::error::HeckeError;

/// `Σ_x a_x ^{S₁}H^{S₂}_x`, cosets keyed by their minimal representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularHeckeElt {
    pub s1: Subset,
    pub s2: Subset,
    terms: BTreeMap<Element, Laurent>,
}

impl SingularHeckeElt {
    pub fn zero(s1: Subset, s2: Subset) -> Self {
        SingularHeckeElt { s1, s2, terms: BTreeMap::new() }
    }

    /// `^{S₁}H^{S₂}_x` for the coset with minimal representative `min`.
    pub fn basis(s1: Subset, s2: Subset, min: Element) -> Self {
        let mut h = Self::zero(s1, s2);
        h.add_term(min, &Laurent::one());
        h
    }

    pub fn add_term(&mut self, min: Element, a: &Laurent) {
        if a.is_zero() {
            return;
        }
        let e = self.terms.entry(min.clone()).or_default();
        *e += a;
        if e.is_zero() {
            self.terms.remove(&min);
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Element, &Laurent)> {
        self.terms.iter()
    }

    pub fn coeff(&self, min: &Element) -> Laurent {
        self.terms.get(min).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.s1, self.s2), (o.s1, o.s2), "adding elements of different modules");
        let mut h = self.clone();
        for (x, c) in &o.terms {
            h.add_term(x.clone(), c);
        }
        h
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&Laurent::monomial(0, -1)))
    }

    pub fn scale(&self, a: &Laurent) -> Self {
        let mut h = Self::zero(self.s1, self.s2);
        for (x, c) in &self.terms {
            h.add_term(x.clone(), &(c * a));
        }
        h
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        self.scale(&Laurent::v_pow(k))
    }
}

impl Hecke<'_> {
    /// `^{S₁}H^{S₂}_x = Σ_{a ∈ x} v^{ℓ(x₊) − ℓ(a)} H_a`.
    pub fn singular_basis(&self, x: &DoubleCoset) -> HeckeElt {
        let top = x.max.length() as i32;
        let mut h = HeckeElt::zero();
        for a in &x.members {
            h.add_term(a.clone(), &Laurent::v_pow(top - a.length() as i32));
        }
        h
    }

    /// Expansion in the standard basis.
    pub fn from_singular(&self, h: &SingularHeckeElt) -> Result<HeckeElt, HeckeError> {
        let mut out = HeckeElt::zero();
        for (min, c) in h.terms() {
            let x = self.group.double_coset(min, h.s1, h.s2)?;
            out = out.add(&self.singular_basis(&x).scale(c));
        }
        Ok(out)
    }

    /// Coordinates in the singular basis, or a witness that `h ∉ H̲_{w_{S₁}}ℋ ∩ ℋH̲_{w_{S₂}}`.
    pub fn to_singular(&self, h: &HeckeElt, s1: Subset, s2: Subset) -> Result<SingularHeckeElt, HeckeError> {
        let mut cosets: BTreeMap<Element, DoubleCoset> = BTreeMap::new();
        for w in h.support() {
            let m = self.group.min_rep(w, s1, s2);
            if !cosets.contains_key(&m) {
                cosets.insert(m.clone(), self.group.double_coset(&m, s1, s2)?);
            }
        }
        let mut out = SingularHeckeElt::zero(s1, s2);
        let mut rest = h.clone();
        for (m, x) in &cosets {
            let c = h.coeff(&x.max);
            out.add_term(m.clone(), &c);
            rest = rest.sub(&self.singular_basis(x).scale(&c));
        }
        if let Some((w, c)) = rest.terms().next() {
            let expected = &h.coeff(w) - c;
            return Err(HeckeError::NotInParabolicModule {
                element: self.group.name(w),
                found: h.coeff(w).to_string(),
                expected: expected.to_string(),
            });
        }
        Ok(out)
    }

    /// `h₁ *_{S₂} h₂ = (Σ_{w ∈ W_{S₂}} v^{ℓ(w_{S₂}) − 2ℓ(w)})^{-1} h₁h₂`.
    pub fn star(&self, a: &SingularHeckeElt, b: &SingularHeckeElt) -> Result<SingularHeckeElt, HeckeError> {
        if a.s2 != b.s1 {
            return Err(HeckeError::MiddleMismatch {
                left: self.group.subset_names(&a.s2),
                right: self.group.subset_names(&b.s1),
            });
        }
        let prod = self.mul(&self.from_singular(a)?, &self.from_singular(b)?)?;
        let pi = self.poincare(a.s2)?;
        let mut q = HeckeElt::zero();
        for (w, c) in prod.terms() {
            let d = c.div_exact(&pi).ok_or_else(|| HeckeError::NotDivisible(self.group.name(w)))?;
            q.add_term(w.clone(), &d);
        }
        self.to_singular(&q, a.s1, b.s2)
    }

    /// Predicted character of a push-forward: `v^{−ℓ(w_{S₂})} H̲_{w_{S₁}} h H̲_{w_{S₂}}`.
    pub fn push_char(&self, h: &HeckeElt, s1: Subset, s2: Subset) -> Result<SingularHeckeElt, HeckeError> {
        let l2 = self.group.parabolic(s2)?.longest_length() as i32;
        let x = self.mul_all(&[self.longest_kl(s1)?, h.clone(), self.longest_kl(s2)?])?;
        self.to_singular(&x.shift(-l2), s1, s2)
    }

    /// Bar involution restricted to `₍S₁₎ℋ₍S₂₎`.
    pub fn singular_bar(&self, h: &SingularHeckeElt) -> Result<SingularHeckeElt, HeckeError> {
        let b = self.bar(&self.from_singular(h)?)?;
        self.to_singular(&b, h.s1, h.s2)
    }

    /// `ω`, which maps `₍S₁₎ℋ₍S₂₎` to `₍S₂₎ℋ₍S₁₎`.
    pub fn singular_omega(&self, h: &SingularHeckeElt) -> Result<SingularHeckeElt, HeckeError> {
        let o = self.omega(&self.from_singular(h)?)?;
        self.to_singular(&o, h.s2, h.s1)
    }

    /// `v^{ℓ(w_{S₂})} ε̄(h₂ *_{S₂} ω(h₁))`: predicted graded rank over `R^{S₁}` of the
    /// morphism space between objects with characters `h₁`, `h₂`.
    pub fn hom_grk_formula(&self, h1: &SingularHeckeElt, h2: &SingularHeckeElt) -> Result<Laurent, HeckeError> {
        let l2 = self.group.parabolic(h2.s2)?.longest_length() as i32;
        let o = self.singular_omega(h1)?;
        let p = self.star(h2, &o)?;
        Ok(self.bar_eps(&self.from_singular(&p)?)?.shift(l2))
    }

    /// The unique bar-invariant `b_x ∈ ^{S₁}H^{S₂}_x + Σ_{y<x} vℤ[v] ^{S₁}H^{S₂}_y`.
    pub fn bar_invariant_element(&self, x: &DoubleCoset) -> Result<SingularHeckeElt, HeckeError> {
        let (s1, s2) = (x.s1, x.s2);
        // Lower cosets y ≤ x, in ShortLex order of x₋ (which refines the coset order).
        let mut lower: Vec<DoubleCoset> = Vec::new();
        for w in self.group.elements_up_to(x.min.length()) {
            if self.group.min_rep(&w, s1, s2) == w && self.group.bruhat_leq(&w, &x.min) {
                lower.push(self.group.double_coset(&w, s1, s2)?);
            }
        }
        lower.sort();
        let mut bars: HashMap<Element, SingularHeckeElt> = HashMap::new();
        for z in &lower {
            let b = self.singular_bar(&SingularHeckeElt::basis(s1, s2, z.min.clone()))?;
            if b.coeff(&z.min) != Laurent::one() || b.terms().any(|(y, _)| !self.group.bruhat_leq(y, &z.min)) {
                return Err(HeckeError::NonUnitriangularBar(self.group.name(&z.min)));
            }
            bars.insert(z.min.clone(), b);
        }
        let mut m: BTreeMap<Element, Laurent> = BTreeMap::new();
        for y in lower.iter().rev().skip(1) {
            // q = r_{y,x} + Σ_{y<z<x} m̄_z r_{y,z} must equal m_y − m̄_y.
            let mut q = bars[&x.min].coeff(&y.min);
            for (z, mz) in &m {
                q += &(&mz.bar() * &bars[z].coeff(&y.min));
            }
            if q.coeff(0) != 0 || q.bar() != q.scale(-1) {
                return Err(HeckeError::NonUnitriangularBar(self.group.name(&y.min)));
            }
            let my = Laurent::from_terms(q.terms().filter(|(e, _)| *e > 0));
            if !my.is_zero() {
                m.insert(y.min.clone(), my);
            }
        }
        let mut out = SingularHeckeElt::basis(s1, s2, x.min.clone());
        for (y, c) in m {
            out.add_term(y, &c);
        }
        Ok(out)
    }

    /// Bar-invariant triangular basis, one element per coset (ShortLex order of `x₋`).
    pub fn bar_invariant_basis(&self, s1: Subset, s2: Subset) -> Result<Vec<SingularHeckeElt>, HeckeError> {
        self.group.double_cosets(s1, s2)?.iter().map(|x| self.bar_invariant_element(x)).collect()
    }

    /// Kazhdan–Lusztig basis element `H̲_w`.
    pub fn kl_element(&self, w: &Element) -> Result<HeckeElt, HeckeError> {
        let x = self.group.double_coset(w, Subset::empty(), Subset::empty())?;
        self.from_singular(&self.bar_invariant_element(&x)?)
    }
}
