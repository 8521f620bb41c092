//! The Assumption check, Demazure bases of `R` over `R^{S₁}` and the Frobenius dual basis.

use std::sync::Arc;

use sbim_algebra::linalg::{sparsify, Echelon};
use sbim_algebra::{monomials, Field, Poly};
use sbim_coxeter::{Element, Subset};

use crate::calc::Schubert;
use crate::error::SchubertError;

/// Demazure basis `{∂_w(p)}` of `R` over `R^{S₁}` and its dual basis `{q_w}` for the
/// pairing `(f, g) ↦ ∂_{w_{S₁}}(fg)`. Both lists follow the ShortLex order of `W_{S₁}`.
#[derive(Clone, Debug)]
pub struct FrobeniusData<F: Field> {
    pub subset: Subset,
    pub elements: Vec<Element>,
    pub longest: Element,
    pub p: Poly<F>,
    pub basis: Vec<Poly<F>>,
    pub dual: Vec<Poly<F>>,
}

impl<F: Field> FrobeniusData<F> {
    pub fn index_of(&self, w: &Element) -> Option<usize> {
        self.elements.binary_search(w).ok()
    }
}

/// Outcome of checking the Assumption for a subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssumptionReport {
    pub finitary: bool,
    pub faithful: bool,
    pub p_found: bool,
}

impl AssumptionReport {
    pub fn holds(&self) -> bool {
        self.finitary && self.faithful && self.p_found
    }

    /// Every failing part of the Assumption, joined; `None` when it holds.
    pub fn reason(&self) -> Option<String> {
        let mut parts = Vec::new();
        if !self.finitary {
            parts.push("subset is not finitary");
        }
        if !self.faithful {
            parts.push("parabolic subgroup does not act faithfully on V");
        }
        if !self.p_found {
            parts.push("find_p is Absent: ∂_{w_S} vanishes in degree ℓ(w_S)");
        }
        (!parts.is_empty()).then(|| parts.join("; "))
    }
}

impl<F: Field> Schubert<F> {
    /// A `p` of degree `ℓ(w_{S₁})` with `∂_{w_{S₁}}(p) = 1`: the first monomial in graded-lex
    /// order with nonzero image, rescaled. `None` when `∂_{w_{S₁}}` vanishes on that degree.
    pub fn find_p(&self, subset: Subset) -> Result<Option<Poly<F>>, SchubertError> {
        let par = self.group.parabolic(subset)?;
        let d = par.longest_length();
        let n = self.nvars();
        for m in &monomials(n, d).monos {
            let p = Poly::monomial(n, *m, F::one());
            let c = self.demazure_element(&par.longest, &p)?.constant_term();
            if let Some(ci) = c.inv() {
                return Ok(Some(p.scale(&ci)));
            }
        }
        Ok(None)
    }

    /// Check the three parts of the Assumption for `subset`.
    pub fn check_assumption(&self, subset: Subset) -> Result<AssumptionReport, SchubertError> {
        if !self.group.is_finitary(subset) {
            return Ok(AssumptionReport { finitary: false, faithful: false, p_found: false });
        }
        let faithful = self.is_faithful(subset)?;
        let p_found = self.find_p(subset)?.is_some();
        Ok(AssumptionReport { finitary: true, faithful, p_found })
    }

    /// The Demazure basis and dual basis for `subset` (cached).
    pub fn frobenius(&self, subset: Subset) -> Result<Arc<FrobeniusData<F>>, SchubertError> {
        if let Some(f) = self.frobenius.lock().unwrap().get(&subset) {
            return Ok(f.clone());
        }
        let par = self.group.parabolic(subset)?;
        let names = self.group.subset_names(&subset).join("");
        let p = self.find_p(subset)?.ok_or_else(|| SchubertError::AssumptionFailed(names.clone()))?;
        let elements = par.elements.clone();
        let basis: Vec<Poly<F>> =
            elements.iter().map(|w| self.demazure_element(w, &p)).collect::<Result<_, _>>()?;
        let mut dual = Vec::with_capacity(elements.len());
        for y in &elements {
            dual.push(self.dual_element(&par.longest, &elements, &basis, y)?);
        }
        let data = Arc::new(FrobeniusData { subset, elements, longest: par.longest.clone(), p, basis, dual });
        self.frobenius.lock().unwrap().insert(subset, data.clone());
        Ok(data)
    }

    /// Solve `∂_{w_{S₁}}(∂_x(p) q_y) = δ_{xy}` for `q_y` of degree `ℓ(y)`.
    fn dual_element(
        &self,
        longest: &Element,
        elements: &[Element],
        basis: &[Poly<F>],
        y: &Element,
    ) -> Result<Poly<F>, SchubertError> {
        let n = self.nvars();
        let dy = y.length();
        let lower: Vec<usize> = (0..elements.len()).filter(|&i| elements[i].length() <= dy).collect();
        let widths: Vec<usize> = lower.iter().map(|&i| monomials(n, dy - elements[i].length()).len()).collect();
        let total: usize = widths.iter().sum();
        let monos = monomials(n, dy);
        let mut ech = Echelon::new(total, true);
        for m in &monos.monos {
            let q = Poly::monomial(n, *m, F::one());
            let mut v = Vec::with_capacity(total);
            for &i in &lower {
                let img = self.demazure_element(longest, &(&basis[i] * &q))?;
                v.extend(img.coords_in_degree(dy - elements[i].length()));
            }
            ech.insert(&sparsify(&v));
        }
        let mut target = Vec::with_capacity(total);
        for (k, &i) in lower.iter().enumerate() {
            let mut block = vec![F::zero(); widths[k]];
            if elements[i] == *y {
                block[0] = F::one();
            }
            target.extend(block);
        }
        let combo = ech.solve(&sparsify(&target)).ok_or_else(|| {
            SchubertError::SingularTransition(format!("no dual basis element for {}", self.group.name(y)))
        })?;
        Ok(Poly::from_terms(n, monos.monos.iter().zip(combo).map(|(m, c)| (*m, c))))
    }

    /// Frobenius trace `f ↦ ∂_{w_{S₁}}(f)`, an `R^{S₁}`-linear map `R → R^{S₁}`.
    pub fn frobenius_trace(&self, subset: Subset, f: &Poly<F>) -> Result<Poly<F>, SchubertError> {
        let par = self.group.parabolic(subset)?;
        self.demazure_element(&par.longest, f)
    }

    /// Coordinates `(a_w)` of `f = Σ_w a_w ∂_w(p)` with `a_w ∈ R^{S₁}`, via `a_w = ∂_{w_{S₁}}(f q_w)`.
    pub fn express(&self, subset: Subset, f: &Poly<F>) -> Result<Vec<Poly<F>>, SchubertError> {
        let fd = self.frobenius(subset)?;
        fd.dual.iter().map(|q| self.demazure_element(&fd.longest, &(f * q))).collect()
    }

    /// `Σ_w a_w ∂_w(p)`.
    pub fn reassemble(&self, subset: Subset, coords: &[Poly<F>]) -> Result<Poly<F>, SchubertError> {
        let fd = self.frobenius(subset)?;
        let mut out = self.zero();
        for (a, b) in coords.iter().zip(&fd.basis) {
            out = out + a * b;
        }
        Ok(out)
    }
}
