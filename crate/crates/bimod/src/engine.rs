//! The engine: Schubert data plus caches, and the basic constructions on regular objects.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use sbim_algebra::{Field, Mono, Poly};
use sbim_coxeter::{CoxeterGroup, Element, Subset};
use sbim_schubert::Schubert;

use crate::error::BimodError;
use crate::object::RegularObject;

/// `Σ_a f_a ⊗ g_a`, an element of `R ⊗_{R^{S}} R` in tensor form.
pub type TensorForm<F> = Vec<(Poly<F>, Poly<F>)>;

/// Bimodule computations over one realization.
pub struct Engine<F: Field> {
    pub sch: Arc<Schubert<F>>,
    /// How far above an object's lowest degree certificates may look before giving up.
    pub degree_cap: i32,
    frobenius: Mutex<HashMap<Subset, Arc<RegularObject<F>>>>,
    frobenius_tensors: Mutex<HashMap<Subset, Arc<Vec<TensorForm<F>>>>>,
    express: Mutex<HashMap<(Subset, Mono), Arc<Vec<Poly<F>>>>>,
    one_tensor: Mutex<HashMap<(Subset, Mono), Arc<Vec<Poly<F>>>>>,
    roots: Vec<Poly<F>>,
}

impl<F: Field> Engine<F> {
    pub fn new(sch: Arc<Schubert<F>>) -> Self {
        let roots = if sch.group.is_finite() {
            sch.group.reflections(None).iter().map(|t| Poly::linear(&t.root_in(&sch.real))).collect()
        } else {
            sch.group.reflections(Some(sch.group.length_bound())).iter().map(|t| Poly::linear(&t.root_in(&sch.real))).collect()
        };
        Engine {
            sch,
            degree_cap: 48,
            frobenius: Mutex::new(HashMap::new()),
            frobenius_tensors: Mutex::new(HashMap::new()),
            express: Mutex::new(HashMap::new()),
            one_tensor: Mutex::new(HashMap::new()),
            roots,
        }
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.sch.group
    }

    pub fn nvars(&self) -> usize {
        self.sch.nvars()
    }

    /// Positive roots of the reflections, used to cancel denominators.
    pub fn reflection_roots(&self) -> &[Poly<F>] {
        &self.roots
    }

    pub(crate) fn mul(&self, a: &Element, b: &Element) -> Result<Element, BimodError> {
        Ok(self.sch.group.mul(a, b)?)
    }

    /// Length of the longest element of `W_I`.
    pub fn longest_length(&self, s: Subset) -> Result<usize, BimodError> {
        Ok(self.sch.group.parabolic(s)?.longest_length())
    }

    /// The unit object `R`.
    pub fn unit(&self) -> Arc<RegularObject<F>> {
        let n = self.nvars();
        Arc::new(RegularObject::new(n, vec![0], vec![Element::identity()], vec![0], vec![vec![Poly::one(n)]]))
    }

    /// `M(k)`, with `M(k)^i = M^{i+k}`.
    pub fn shift(&self, m: &RegularObject<F>, k: i32) -> Arc<RegularObject<F>> {
        Arc::new(RegularObject::new(
            m.nvars,
            m.degrees.iter().map(|d| d - k).collect(),
            m.weights.clone(),
            m.col_deg.iter().map(|d| d - k).collect(),
            m.coords.clone(),
        ))
    }

    /// `M ⊕ N`.
    pub fn dsum(&self, a: &RegularObject<F>, b: &RegularObject<F>) -> Arc<RegularObject<F>> {
        let n = a.nvars;
        let (ra, rb) = (a.rank(), b.rank());
        let mut coords = Vec::with_capacity(ra + rb);
        for row in &a.coords {
            let mut r = row.clone();
            r.extend((0..rb).map(|_| Poly::zero(n)));
            coords.push(r);
        }
        for row in &b.coords {
            let mut r: Vec<Poly<F>> = (0..ra).map(|_| Poly::zero(n)).collect();
            r.extend(row.iter().cloned());
            coords.push(r);
        }
        Arc::new(RegularObject::new(
            n,
            a.degrees.iter().chain(&b.degrees).copied().collect(),
            a.weights.iter().chain(&b.weights).cloned().collect(),
            a.col_deg.iter().chain(&b.col_deg).copied().collect(),
            coords,
        ))
    }

    /// `M ⊗_R N` on the basis `m_i ⊗ n_j` (index `i·rank N + j`), coordinates
    /// `m_i ⊗ n_j = Σ c_ik w_k(c'_jl) (e_k ⊗ e'_l)` and weights `w_k w'_l`.
    pub fn tensor(&self, a: &RegularObject<F>, b: &RegularObject<F>) -> Result<Arc<RegularObject<F>>, BimodError> {
        let n = a.nvars;
        let (ra, rb) = (a.rank(), b.rank());
        let mut coords = vec![vec![Poly::zero(n); ra * rb]; ra * rb];
        let mut weights = Vec::with_capacity(ra * rb);
        let mut col_deg = Vec::with_capacity(ra * rb);
        for k in 0..ra {
            for l in 0..rb {
                weights.push(self.mul(&a.weights[k], &b.weights[l])?);
                col_deg.push(a.col_deg[k] + b.col_deg[l]);
            }
        }
        for k in 0..ra {
            let twisted: Vec<Vec<Poly<F>>> =
                b.coords.iter().map(|row| row.iter().map(|c| self.sch.act(&a.weights[k], c)).collect()).collect();
            for i in 0..ra {
                let cik = &a.coords[i][k];
                if cik.is_zero() {
                    continue;
                }
                for (j, trow) in twisted.iter().enumerate() {
                    for (l, t) in trow.iter().enumerate() {
                        if !t.is_zero() {
                            coords[i * rb + j][k * rb + l] = cik * t;
                        }
                    }
                }
            }
        }
        let degrees = a.degrees.iter().flat_map(|da| b.degrees.iter().map(move |db| da + db)).collect();
        Ok(Arc::new(RegularObject::new(n, degrees, weights, col_deg, coords)))
    }

    /// `R ⊗_{R^{S}} R` on the basis `{∂^R_w(F_{w_S})}` (ShortLex order of `w ∈ W_S`), in
    /// `φ`-coordinates with weights `x ∈ W_S`.
    pub fn frobenius_object(&self, s: Subset) -> Result<Arc<RegularObject<F>>, BimodError> {
        if let Some(m) = self.frobenius.lock().unwrap().get(&s) {
            return Ok(m.clone());
        }
        let obj = if s.is_empty() {
            self.unit()
        } else {
            let par = self.sch.group.parabolic(s)?;
            let basis = self.sch.equivariant_basis(s)?;
            let top = par.longest_length() as i32;
            let degrees = par.elements.iter().map(|w| 2 * (top - w.length() as i32)).collect();
            let coords = basis.into_iter().map(|t| t.coords).collect();
            Arc::new(RegularObject::new(self.nvars(), degrees, par.elements.clone(), vec![0; par.order()], coords))
        };
        self.frobenius.lock().unwrap().insert(s, obj.clone());
        Ok(obj)
    }

    /// The basis of [`Engine::frobenius_object`] in tensor form:
    /// `∂^R_w(F_{w_S}) = Σ_u ∂_u(p) ⊗ ∂_w(w_S(q_u))`.
    pub fn frobenius_tensor_forms(&self, s: Subset) -> Result<Arc<Vec<TensorForm<F>>>, BimodError> {
        if let Some(m) = self.frobenius_tensors.lock().unwrap().get(&s) {
            return Ok(m.clone());
        }
        let out = if s.is_empty() {
            vec![vec![(self.sch.one(), self.sch.one())]]
        } else {
            let par = self.sch.group.parabolic(s)?;
            let top = self.sch.f_longest_tensor(s)?;
            let mut out = Vec::with_capacity(par.order());
            for w in &par.elements {
                let mut form = Vec::new();
                for (f, g) in &top {
                    let dg = self.sch.demazure_element(w, g)?;
                    if !dg.is_zero() {
                        form.push((f.clone(), dg));
                    }
                }
                out.push(form);
            }
            out
        };
        let out = Arc::new(out);
        self.frobenius_tensors.lock().unwrap().insert(s, out.clone());
        Ok(out)
    }

    /// Bott–Samelson object `R ⊗_{R^{s₁}} R ⊗_{R^{s₂}} ⋯ ⊗_{R^{s_n}} R`.
    pub fn bs(&self, word: &[usize]) -> Result<Arc<RegularObject<F>>, BimodError> {
        let mut m = self.unit();
        for &s in word {
            let b = self.frobenius_object(Subset::from_indices([s]))?;
            m = if m.rank() == 1 && m.degrees[0] == 0 && m.weights[0].is_identity() { b } else { self.tensor(&m, &b)? };
        }
        Ok(m)
    }

    /// Left coefficients of `x·g` for `x = Σ x_i m_i` homogeneous of degree `d`.
    pub fn right_mul(
        &self,
        m: &RegularObject<F>,
        d: i32,
        x: &[Poly<F>],
        g: &Poly<F>,
    ) -> Result<Vec<Poly<F>>, BimodError> {
        let n = self.nvars();
        if g.is_zero() || x.iter().all(|c| c.is_zero()) {
            return Ok(vec![Poly::zero(n); m.rank()]);
        }
        let gd = g.degree().unwrap() as i32;
        let c = m.coords_of(x);
        let y: Vec<Poly<F>> = c
            .iter()
            .zip(&m.weights)
            .map(|(ck, w)| if ck.is_zero() { ck.clone() } else { ck * &self.sch.act(w, g) })
            .collect();
        m.solve_coords(d + 2 * gd, &y)
            .ok_or_else(|| BimodError::NotInLattice("right multiple left the lattice".into()))
    }

    /// Matrix `A` with `m_i g = Σ_j A_ij m_j`.
    pub fn right_matrix(&self, m: &RegularObject<F>, g: &Poly<F>) -> Result<Vec<Vec<Poly<F>>>, BimodError> {
        let n = self.nvars();
        (0..m.rank())
            .map(|i| {
                let mut x = vec![Poly::zero(n); m.rank()];
                x[i] = Poly::one(n);
                self.right_mul(m, m.degrees[i], &x, g)
            })
            .collect()
    }

    /// Coordinates `(a_u)` of `f = Σ_u a_u ∂_u(p)` over `R^{S}` (ShortLex order of `W_S`).
    pub fn express(&self, s: Subset, f: &Poly<F>) -> Result<Vec<Poly<F>>, BimodError> {
        if s.is_empty() {
            return Ok(vec![f.clone()]);
        }
        let n = self.nvars();
        let mut out: Option<Vec<Poly<F>>> = None;
        for (mu, c) in f.terms() {
            let key = (s, *mu);
            let cached = self.express.lock().unwrap().get(&key).cloned();
            let e = match cached {
                Some(e) => e,
                None => {
                    let e = Arc::new(self.sch.express(s, &Poly::monomial(n, *mu, F::one()))?);
                    self.express.lock().unwrap().insert(key, e.clone());
                    e
                }
            };
            let acc = out.get_or_insert_with(|| vec![Poly::zero(n); e.len()]);
            for (a, b) in acc.iter_mut().zip(e.iter()) {
                *a = &*a + &b.scale(c);
            }
        }
        match out {
            Some(o) => Ok(o),
            None => Ok(vec![Poly::zero(n); self.sch.group.parabolic(s)?.order()]),
        }
    }

    /// `dim M_d` for `d` in `lo..=hi`.
    pub fn hilbert(&self, m: &RegularObject<F>, lo: i32, hi: i32) -> Vec<usize> {
        (lo..=hi).map(|d| m.dim(d)).collect()
    }

    /// Upper end of the degree window used by certificates for an object.
    pub fn bound_for(&self, m: &RegularObject<F>) -> i32 {
        m.max_degree() + self.degree_cap
    }

    /// `w(f)` for a polynomial given by graded degree bookkeeping (convenience).
    pub fn act(&self, w: &Element, f: &Poly<F>) -> Poly<F> {
        self.sch.act(w, f)
    }

    /// The Demazure basis `{∂_u(p)}` of `R` over `R^{S}` (ShortLex order of `W_S`); `[1]` for `S = ∅`.
    pub fn frob_basis(&self, s: Subset) -> Result<Vec<Poly<F>>, BimodError> {
        if s.is_empty() {
            return Ok(vec![self.sch.one()]);
        }
        Ok(self.sch.frobenius(s)?.basis.clone())
    }

    /// Graded degrees `2(ℓ(w_S) − ℓ(u))` of the Demazure basis.
    pub fn frob_degrees(&self, s: Subset) -> Result<Vec<i32>, BimodError> {
        let par = self.sch.group.parabolic(s)?;
        let top = par.longest_length() as i32;
        Ok(par.elements.iter().map(|u| 2 * (top - u.length() as i32)).collect())
    }

    /// Invariants of `W_S` spanning every polynomial degree up to `ℓ(w_S) + 1`, which contains
    /// a generating set of the algebra `R^{S}`.
    pub fn invariant_generators(&self, s: Subset) -> Result<Vec<Poly<F>>, BimodError> {
        let top = self.longest_length(s)?;
        let mut out = Vec::new();
        for d in 1..=top + 1 {
            out.extend(self.sch.invariants(s, d).iter().cloned());
        }
        Ok(out)
    }

    /// Left coefficients of `1 ⊗ z` in the basis of [`Engine::frobenius_object`].
    pub fn one_tensor(&self, s: Subset, z: &Poly<F>) -> Result<Vec<Poly<F>>, BimodError> {
        if s.is_empty() {
            return Ok(vec![z.clone()]);
        }
        let n = self.nvars();
        let order = self.sch.group.parabolic(s)?.order();
        let mut out = vec![Poly::zero(n); order];
        for (mu, c) in z.terms() {
            let key = (s, *mu);
            let cached = self.one_tensor.lock().unwrap().get(&key).cloned();
            let e = match cached {
                Some(e) => e,
                None => {
                    let m = Poly::monomial(n, *mu, F::one());
                    let tuple = self.sch.phi_of_tensor(s, &[(self.sch.one(), m)])?;
                    let coefs = match self.sch.phi_membership(&tuple)? {
                        sbim_schubert::Membership::Member(c) => c,
                        sbim_schubert::Membership::NotMember { .. } => {
                            return Err(BimodError::NotInLattice("1 ⊗ f outside R ⊗ R".into()))
                        }
                    };
                    let e = Arc::new(coefs);
                    self.one_tensor.lock().unwrap().insert(key, e.clone());
                    e
                }
            };
            for (a, b) in out.iter_mut().zip(e.iter()) {
                *a = &*a + &b.scale(c);
            }
        }
        Ok(out)
    }
}
