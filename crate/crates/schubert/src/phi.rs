//! Elements of `R ⊗_{R^{S₁}} R` through their coordinates `φ_w(f ⊗ g) = f·w(g)`, `w ∈ W_{S₁}`.

use sbim_algebra::{Field, Poly};
use sbim_coxeter::{Element, Subset};

use crate::calc::Schubert;
use crate::error::SchubertError;

/// `(φ_w(F))_{w ∈ W_{S₁}}`, indexed by the ShortLex order of `W_{S₁}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiTuple<F: Field> {
    pub subset: Subset,
    pub coords: Vec<Poly<F>>,
}

impl<F: Field> PhiTuple<F> {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// Left multiplication by `f ∈ R`.
    pub fn lmul(&self, f: &Poly<F>) -> Self {
        PhiTuple { subset: self.subset, coords: self.coords.iter().map(|c| f * c).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        PhiTuple { subset: self.subset, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a + b).collect() }
    }
}

/// Result of expanding a tuple in the basis `{∂^R_w(F_{w_{S₁}})}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<F: Field> {
    /// Polynomial left coefficients, one per `w ∈ W_{S₁}` in ShortLex order.
    Member(Vec<Poly<F>>),
    /// The coefficient of `∂^R_w(F)` is `numerator/denominator` in lowest terms (up to roots).
    NotMember { w: Element, numerator: Poly<F>, denominator: Poly<F> },
}

impl<F: Field> Schubert<F> {
    /// `φ`-coordinates of `Σ_i f_i ⊗ g_i`.
    pub fn phi_of_tensor(&self, subset: Subset, terms: &[(Poly<F>, Poly<F>)]) -> Result<PhiTuple<F>, SchubertError> {
        let par = self.group.parabolic(subset)?;
        let coords = par
            .elements
            .iter()
            .map(|x| {
                let mut acc = self.zero();
                for (f, g) in terms {
                    acc = acc + f * &self.act(x, g);
                }
                acc
            })
            .collect();
        Ok(PhiTuple { subset, coords })
    }

    /// `F_{w_{S₁}} = Σ_u ∂_u(p) ⊗ w_{S₁}(q_u)`: the image under `1 ⊗ w_{S₁}` of the element
    /// `Σ_u ∂_u(p) ⊗ q_u`, whose `φ`-coordinates vanish away from the identity.
    pub fn f_longest_tensor(&self, subset: Subset) -> Result<Vec<(Poly<F>, Poly<F>)>, SchubertError> {
        let fd = self.frobenius(subset)?;
        Ok(fd.basis.iter().zip(&fd.dual).map(|(b, q)| (b.clone(), self.act(&fd.longest, q))).collect())
    }

    /// The elements `F_w`, `w ∈ W_{S₁}`, with `φ_x(F_w) ∈ 𝕂^× δ_{xw} ∏_t α_t`.
    /// `F_w = (1 ⊗ w^{-1}w_{S₁})(F_{w_{S₁}})`, so `φ_x(F_w) = φ_{x w^{-1} w_{S₁}}(F_{w_{S₁}})`.
    pub fn f_elements(&self, subset: Subset) -> Result<Vec<PhiTuple<F>>, SchubertError> {
        let par = self.group.parabolic(subset)?;
        let top = self.phi_of_tensor(subset, &self.f_longest_tensor(subset)?)?;
        let mut out = Vec::new();
        for w in &par.elements {
            let shift = self.group.mul(&self.group.inv(w), &par.longest)?;
            let coords = par
                .elements
                .iter()
                .map(|x| {
                    let y = self.group.mul(x, &shift)?;
                    Ok(top.coords[par.elements.binary_search(&y).expect("element of W_I")].clone())
                })
                .collect::<Result<_, SchubertError>>()?;
            out.push(PhiTuple { subset, coords });
        }
        Ok(out)
    }

    /// `∂^R_s = 1 ⊗ ∂_s` in coordinates: `φ_x(∂^R_s F) = x(α_s)^{-1}(φ_x(F) − φ_{xs}(F))`.
    pub fn phi_demazure(&self, s: usize, f: &PhiTuple<F>) -> Result<PhiTuple<F>, SchubertError> {
        let par = self.group.parabolic(f.subset)?;
        let mut coords = Vec::with_capacity(f.coords.len());
        for (i, x) in par.elements.iter().enumerate() {
            let xs = self.group.rmul_gen(x, s)?;
            let j = par.elements.binary_search(&xs).expect("s lies in the subset");
            let num = &f.coords[i] - &f.coords[j];
            let den = self.act(x, self.root(s));
            coords.push(num.div_exact(&den).ok_or_else(|| {
                SchubertError::InexactDivision(format!("φ-recursion at {}", self.group.name(x)))
            })?);
        }
        Ok(PhiTuple { subset: f.subset, coords })
    }

    /// `∂^R_w` along the canonical word of `w`.
    pub fn phi_demazure_element(&self, w: &Element, f: &PhiTuple<F>) -> Result<PhiTuple<F>, SchubertError> {
        let mut g = f.clone();
        for &s in w.word().iter().rev() {
            g = self.phi_demazure(s as usize, &g)?;
        }
        Ok(g)
    }

    /// The left `R`-basis `{∂^R_w(F_{w_{S₁}}) | w ∈ W_{S₁}}` of `R ⊗_{R^{S₁}} R`.
    pub fn equivariant_basis(&self, subset: Subset) -> Result<Vec<PhiTuple<F>>, SchubertError> {
        let par = self.group.parabolic(subset)?;
        let top = self.phi_of_tensor(subset, &self.f_longest_tensor(subset)?)?;
        par.elements.iter().map(|w| self.phi_demazure_element(w, &top)).collect()
    }

    /// Expand a tuple in the basis `{∂^R_w(F_{w_{S₁}})}` by the triangular solve along
    /// `x = w_{S₁}w^{-1}`; a non-polynomial coefficient means the tuple is not in the image
    /// of `R ⊗_{R^{S₁}} R`.
    pub fn phi_membership(&self, f: &PhiTuple<F>) -> Result<Membership<F>, SchubertError> {
        let subset = f.subset;
        let par = self.group.parabolic(subset)?;
        let basis = self.equivariant_basis(subset)?;
        let els = &par.elements;
        let mut coef: Vec<Option<Poly<F>>> = vec![None; els.len()];
        let roots: Vec<Poly<F>> =
            self.group.parabolic_reflections(subset)?.iter().map(|t| Poly::linear(&t.root_in(&self.real))).collect();
        for (xi, x) in els.iter().enumerate() {
            let w = self.group.mul(&self.group.inv(x), &par.longest)?;
            let wi = els.binary_search(&w).unwrap();
            let mut rest = f.coords[xi].clone();
            for (k, c) in coef.iter().enumerate() {
                if let Some(c) = c {
                    rest = &rest - &(c * &basis[k].coords[xi]);
                }
            }
            let diag = &basis[wi].coords[xi];
            match rest.div_exact(diag) {
                Some(q) => coef[wi] = Some(q),
                None => {
                    let (mut num, mut den) = (rest, diag.clone());
                    for r in &roots {
                        while let (Some(a), Some(b)) = (num.div_exact(r), den.div_exact(r)) {
                            num = a;
                            den = b;
                        }
                    }
                    return Ok(Membership::NotMember { w, numerator: num, denominator: den });
                }
            }
        }
        Ok(Membership::Member(coef.into_iter().map(|c| c.unwrap()).collect()))
    }
}
