//! Singular objects: summands `e·π_*N` of push-forwards of regular objects to
//! `(R^{S₁}, R^{S₂})`-bimodules, with push, pull, convolution and singular characters.
//!
//! `π_*N` is `N` with the actions restricted; its localization splits over double cosets as
//! `⊕_{a ∈ x} N_Q^a`, so every linear-algebra question reduces to the weight coordinates of
//! the regular object `N`. Convolution uses `π_*N₁ ⊗_{R^{S₂}} π_*N₂ = π_*(N₁ ⊗ B_{S₂} ⊗ N₂)`
//! with `B_{S₂} = R ⊗_{R^{S₂}} R`, and pull-back to `∅` is convolution with `π_*R`.

use std::collections::BTreeMap;
use std::sync::Arc;

use sbim_algebra::linalg::SparseVec;
use sbim_algebra::{Field, Laurent, Poly};
use sbim_coxeter::{DoubleCoset, Element, Subset};
use sbim_hecke::SingularHeckeElt;

use crate::engine::Engine;
use crate::error::BimodError;
use crate::grk::GrkCertifier;
use crate::hom::Morphism;
use crate::object::RegularObject;
use crate::stalk::{chain_increments, columns_where};

/// `e·π_*N` viewed as an `(R^{S₁}, R^{S₂})`-bimodule; `idem = None` means `e = id`.
#[derive(Clone, Debug)]
pub struct SingularObject<F: Field> {
    pub s1: Subset,
    pub s2: Subset,
    pub source: Arc<RegularObject<F>>,
    pub idem: Option<Arc<Morphism<F>>>,
}

impl<F: Field> SingularObject<F> {
    pub fn idem(&self) -> Option<&Morphism<F>> {
        self.idem.as_deref()
    }
}

impl<F: Field> Engine<F> {
    /// `π_*N` for a regular object.
    pub fn induced(&self, n: &Arc<RegularObject<F>>, s1: Subset, s2: Subset) -> Result<SingularObject<F>, BimodError> {
        self.group().parabolic(s1)?;
        self.group().parabolic(s2)?;
        Ok(SingularObject { s1, s2, source: n.clone(), idem: None })
    }

    /// `V(k)`.
    pub fn sing_shift(&self, v: &SingularObject<F>, k: i32) -> SingularObject<F> {
        let source = self.shift(&v.source, k);
        let idem = v.idem.as_ref().map(|e| {
            Arc::new(Morphism { source: source.clone(), target: source.clone(), ..(**e).clone() })
        });
        SingularObject { s1: v.s1, s2: v.s2, source, idem }
    }

    /// Push-forward to `(S₁, S₂) ⊇ (S'₁, S'₂)`.
    pub fn push(&self, v: &SingularObject<F>, s1: Subset, s2: Subset) -> Result<SingularObject<F>, BimodError> {
        if !v.s1.is_subset_of(&s1) || !v.s2.is_subset_of(&s2) {
            return Err(BimodError::SubsetMismatch("push-forward needs larger subsets".into()));
        }
        self.group().parabolic(s1)?;
        self.group().parabolic(s2)?;
        let idem = match &v.idem {
            None => None,
            Some(e) => {
                let basis = self.frob_basis(s1)?;
                let n = self.nvars();
                let mut images = Vec::with_capacity(v.source.rank() * basis.len());
                for i in 0..v.source.rank() {
                    for b in &basis {
                        let mut x = vec![Poly::zero(n); v.source.rank()];
                        x[i] = b.clone();
                        images.push(self.apply(e, &x)?);
                    }
                }
                Some(Arc::new(Morphism { s1, s2, images, ..(**e).clone() }))
            }
        };
        Ok(SingularObject { s1, s2, source: v.source.clone(), idem })
    }

    /// Pull-back along `(S'₁, S'₂) ⊆ (S₁, S₂)`, where each `S'ᵢ` is `∅` or `Sᵢ`.
    pub fn pull(&self, v: &SingularObject<F>, s1: Subset, s2: Subset) -> Result<SingularObject<F>, BimodError> {
        let ok = |new: Subset, old: Subset| new == old || new.is_empty();
        if !ok(s1, v.s1) || !ok(s2, v.s2) {
            return Err(BimodError::Unsupported("pull-back is implemented to ∅ or to the same subset".into()));
        }
        let mut out = v.clone();
        if s1 != v.s1 {
            let left = self.induced(&self.unit(), Subset::empty(), v.s1)?;
            out = self.convolve(&left, &out)?;
        }
        if s2 != v.s2 {
            let right = self.induced(&self.unit(), v.s2, Subset::empty())?;
            out = self.convolve(&out, &right)?;
        }
        Ok(out)
    }

    /// The unit `^{S}R^{S}_1 = R^{S}` as the summand `R^{S}·1` of `π_*R`.
    pub fn singular_unit(&self, s: Subset) -> Result<SingularObject<F>, BimodError> {
        let unit = self.unit();
        if s.is_empty() {
            return self.induced(&unit, s, s);
        }
        let par = self.group().parabolic(s)?;
        let n = self.nvars();
        let images = par
            .elements
            .iter()
            .map(|u| vec![if *u == par.longest { Poly::one(n) } else { Poly::zero(n) }])
            .collect();
        let e = Morphism { s1: s, s2: s, source: unit.clone(), target: unit.clone(), degree: 0, images };
        Ok(SingularObject { s1: s, s2: s, source: unit, idem: Some(Arc::new(e)) })
    }

    /// `V₁ ⊗_{R^{S₂}} V₂ = e₁⊗e₂ · π_*(N₁ ⊗ B_{S₂} ⊗ N₂)`.
    pub fn convolve(&self, v1: &SingularObject<F>, v2: &SingularObject<F>) -> Result<SingularObject<F>, BimodError> {
        if v1.s2 != v2.s1 {
            return Err(BimodError::MiddleMismatch {
                left: self.group().subset_names(&v1.s2),
                right: self.group().subset_names(&v2.s1),
            });
        }
        let b = self.frobenius_object(v1.s2)?;
        let source = self.tensor(&*self.tensor(&v1.source, &b)?, &v2.source)?;
        let idem = if v1.idem.is_none() && v2.idem.is_none() {
            None
        } else {
            Some(Arc::new(self.tensor_morphisms(v1.s1, v1.s2, v2.s2, &v1.source, &v2.source, v1.idem(), v2.idem(), &source)?))
        };
        Ok(SingularObject { s1: v1.s1, s2: v2.s2, source, idem })
    }

    /// `φ₁ ⊗_{R^{S₂}} φ₂` on `π_*(N₁ ⊗ B_{S₂} ⊗ N₂)` for endomorphisms (`None` = identity).
    #[allow(clippy::too_many_arguments)]
    fn tensor_morphisms(
        &self,
        s1: Subset,
        s2: Subset,
        s3: Subset,
        n1: &Arc<RegularObject<F>>,
        n2: &Arc<RegularObject<F>>,
        phi1: Option<&Morphism<F>>,
        phi2: Option<&Morphism<F>>,
        total: &Arc<RegularObject<F>>,
    ) -> Result<Morphism<F>, BimodError> {
        let n = self.nvars();
        let forms = self.frobenius_tensor_forms(s2)?;
        let fbasis = self.frob_basis(s1)?;
        let (r1, rb, r2) = (n1.rank(), forms.len(), n2.rank());
        let mut images = Vec::with_capacity(r1 * rb * r2 * fbasis.len());
        for i in 0..r1 {
            let mut ei = vec![Poly::zero(n); r1];
            ei[i] = Poly::one(n);
            for form in forms.iter() {
                for j in 0..r2 {
                    // Σ_a φ₁(∂_u(p) m_i f_a) ⊗ φ₂(g_a n_j), for every u at once.
                    let mut per_u = vec![vec![Poly::zero(n); total.rank()]; fbasis.len()];
                    for (f, g) in form {
                        let mif = self.right_mul(n1, n1.degrees[i], &ei, f)?;
                        let mut gn = vec![Poly::zero(n); r2];
                        gn[j] = g.clone();
                        let z = self.apply_opt(phi2, &gn)?;
                        for (u, pu) in fbasis.iter().enumerate() {
                            let x: Vec<Poly<F>> = mif.iter().map(|c| pu * c).collect();
                            let y = self.apply_opt(phi1, &x)?;
                            self.accumulate_tensor(n1, s2, &y, &z, rb, r2, &mut per_u[u])?;
                        }
                    }
                    images.push(per_u);
                }
            }
        }
        // Reorder to generator index (i, w, j) · |W_{S₁}| + u.
        let images = images.into_iter().flatten().collect();
        Ok(Morphism { s1, s2: s3, source: total.clone(), target: total.clone(), degree: 0, images })
    }

    /// Add `Σ_{l,q} y_l m_l ⊗ z_q n_q` (an element of `N₁ ⊗_{R^{S₂}} N₂`) to `acc`, written in
    /// the basis `m_k ⊗ b_w ⊗ n_q` of `N₁ ⊗ B_{S₂} ⊗ N₂`.
    #[allow(clippy::too_many_arguments)]
    fn accumulate_tensor(
        &self,
        n1: &RegularObject<F>,
        s2: Subset,
        y: &[Poly<F>],
        z: &[Poly<F>],
        rb: usize,
        r2: usize,
        acc: &mut [Poly<F>],
    ) -> Result<(), BimodError> {
        let n = self.nvars();
        for (q, zq) in z.iter().enumerate() {
            if zq.is_zero() {
                continue;
            }
            let c = self.one_tensor(s2, zq)?;
            for (w, cw) in c.iter().enumerate() {
                if cw.is_zero() {
                    continue;
                }
                for (l, yl) in y.iter().enumerate() {
                    if yl.is_zero() {
                        continue;
                    }
                    let mut el = vec![Poly::zero(n); n1.rank()];
                    el[l] = Poly::one(n);
                    let r = self.right_mul(n1, n1.degrees[l], &el, cw)?;
                    for (k, rk) in r.iter().enumerate() {
                        if !rk.is_zero() {
                            let idx = (k * rb + w) * r2 + q;
                            acc[idx] = &acc[idx] + &(yl * rk);
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Double cosets meeting the weights of `N`, bottom first (by `ℓ(x₋)`, a linear extension
    /// of the Bruhat order on cosets), each with the total multiplicity of its weights.
    pub fn cosets_bottom_up(&self, s1: Subset, s2: Subset, n: &RegularObject<F>) -> Result<Vec<(DoubleCoset, usize)>, BimodError> {
        let mut map: BTreeMap<Element, (DoubleCoset, usize)> = BTreeMap::new();
        for (w, c) in n.weight_multiplicities() {
            let min = self.group().min_rep(&w, s1, s2);
            if let Some(e) = map.get_mut(&min) {
                e.1 += c;
            } else {
                map.insert(min, (self.group().double_coset(&w, s1, s2)?, c));
            }
        }
        let mut out: Vec<(DoubleCoset, usize)> = map.into_values().collect();
        out.sort_by(|a, b| (a.0.min.length(), &a.0.min).cmp(&(b.0.min.length(), &b.0.min)));
        Ok(out)
    }

    /// Support of `V` (cosets with a nonzero localized summand), bottom first.
    pub fn sing_support(&self, v: &SingularObject<F>) -> Result<Vec<DoubleCoset>, BimodError> {
        let cosets = self.cosets_bottom_up(v.s1, v.s2, &v.source)?;
        if v.idem.is_none() {
            return Ok(cosets.into_iter().map(|c| c.0).collect());
        }
        let top = self.generator_degrees(v.s1, &v.source)?.into_iter().max().unwrap_or(0);
        let mut out = Vec::new();
        for (x, _) in cosets {
            let mut hit = false;
            for d in v.source.min_degree()..=top {
                if self.costalk_rank(v, &x, d)? > 0 {
                    hit = true;
                    break;
                }
            }
            if hit {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// Spanning vectors of `(e·π_*N)_d` in the label space of the degree-`d` piece.
    pub fn image_vectors(&self, v: &SingularObject<F>, d: i32) -> Result<Vec<Vec<Poly<F>>>, BimodError> {
        let piece = v.source.piece(d);
        let mut out = Vec::with_capacity(piece.labels.len());
        for idx in 0..piece.labels.len() {
            let x = v.source.from_labels(&piece, &[(idx, F::one())]);
            let y = self.apply_opt(v.idem(), &x)?;
            if y.iter().any(|c| !c.is_zero()) {
                out.push(y);
            }
        }
        Ok(out)
    }

    /// The vectors of [`Engine::image_vectors`] in flattened weight coordinates.
    pub(crate) fn image_coords(&self, v: &SingularObject<F>, d: i32) -> Result<Vec<SparseVec<F>>, BimodError> {
        let piece = v.source.piece(d);
        Ok(self
            .image_vectors(v, d)?
            .iter()
            .map(|y| v.source.flatten(&piece, &v.source.coords_of(y)))
            .collect())
    }

    /// `dim (e·π_*N)_d`.
    pub fn sing_dim(&self, v: &SingularObject<F>, d: i32) -> Result<usize, BimodError> {
        if v.idem.is_none() {
            return Ok(v.source.dim(d));
        }
        let piece = v.source.piece(d);
        let vecs: Vec<SparseVec<F>> = self.image_vectors(v, d)?.iter().map(|y| v.source.to_labels(&piece, y)).collect();
        Ok(sbim_algebra::linalg::rank(piece.labels.len(), vecs))
    }

    /// `dim` of the degree-`d` part of the costalk `V^x` (projection onto the weights in `x`).
    pub fn costalk_rank(&self, v: &SingularObject<F>, x: &DoubleCoset, d: i32) -> Result<usize, BimodError> {
        let piece = v.source.piece(d);
        let cols = columns_where(&v.source, &piece, |w| x.contains(w));
        let vecs = self.image_coords(v, d)?;
        Ok(chain_increments(&vecs, &[cols], piece.ncols)[0])
    }

    /// `Σ_{w ∈ W_{S₁} ∩ x₋W_{S₂}x₋^{-1}} t^{2ℓ(w)}` as coefficients of `t^{2i}`.
    pub fn stabilizer_poincare(&self, x: &DoubleCoset) -> Result<Vec<i64>, BimodError> {
        let stab = self.group().coset_stabilizer(x)?;
        let top = stab.iter().map(|w| w.length()).max().unwrap_or(0);
        let mut p = vec![0i64; top + 1];
        for w in stab {
            p[w.length()] += 1;
        }
        Ok(p)
    }

    /// `v^{ℓ(w_{S₁})}·v^{2ℓ(x₋)−ℓ(x₊)}`.
    fn coset_normalization(&self, s1: Subset, x: &DoubleCoset) -> Result<i32, BimodError> {
        Ok(self.longest_length(s1)? as i32 + 2 * x.min.length() as i32 - x.max.length() as i32)
    }

    /// Singular character of `V`.
    pub fn sing_ch(&self, v: &SingularObject<F>) -> Result<SingularHeckeElt, BimodError> {
        match &v.idem {
            None => self.induced_ch(v.s1, v.s2, &v.source),
            Some(e) => {
                let id = self.identity_morphism(v.s1, v.s2, &v.source)?;
                let rest = id.sub(e);
                Ok(self.sing_ch_family(v.s1, v.s2, &v.source, &[(**e).clone(), rest])?.remove(0))
            }
        }
    }

    /// Character of `π_*N` from the standard graded ranks of `N`: the stalk at `x` has graded
    /// rank `A_x·Σ_{a ∈ x} grk(N_{≥a}/N_{>a})` over `^{S₁}R^{S₂}_x`.
    pub fn induced_ch(&self, s1: Subset, s2: Subset, n: &RegularObject<F>) -> Result<SingularHeckeElt, BimodError> {
        let grks = self.std_grks(n)?;
        let mut out = SingularHeckeElt::zero(s1, s2);
        for (x, _) in self.cosets_bottom_up(s1, s2, n)? {
            let mut sum = Laurent::zero();
            for a in &x.members {
                if let Some(g) = grks.get(a) {
                    sum += g;
                }
            }
            let ax = Laurent::from_terms(
                self.stabilizer_poincare(&x)?.iter().enumerate().map(|(i, c)| (-2 * i as i32, *c)),
            );
            let k = self.coset_normalization(s1, &x)?;
            out.add_term(x.min.clone(), &(&sum * &ax).shift(k));
        }
        Ok(out)
    }

    /// Characters of the summands `e_j·π_*N` for idempotents summing to the identity; their
    /// stalk ranks over `^{S₁}R^{S₂}_x` are certified jointly against the rank of `π_*N` at `x`.
    pub fn sing_ch_family(
        &self,
        s1: Subset,
        s2: Subset,
        n: &Arc<RegularObject<F>>,
        idems: &[Morphism<F>],
    ) -> Result<Vec<SingularHeckeElt>, BimodError> {
        let cosets = self.cosets_bottom_up(s1, s2, n)?;
        let nx = cosets.len();
        let mut factors = Vec::with_capacity(nx);
        let mut expected = Vec::with_capacity(nx);
        for (x, mult) in &cosets {
            let p = self.stabilizer_poincare(x)?;
            expected.push((*mult as i64) * p.iter().sum::<i64>());
            factors.push(p);
        }
        let items = idems.len() * nx;
        let mut cert = GrkCertifier::new(
            self.nvars(),
            n.min_degree(),
            (0..items).map(|it| it % nx).collect(),
            expected,
            (0..items).map(|it| factors[it % nx].clone()).collect(),
        );
        let bound = self.bound_for(n);
        let views: Vec<SingularObject<F>> = idems
            .iter()
            .map(|e| SingularObject { s1, s2, source: n.clone(), idem: Some(Arc::new(e.clone())) })
            .collect();
        while !cert.done() {
            let d = cert.next_degree();
            if d > bound {
                return Err(BimodError::DegreeBoundTooSmall { what: "singular stalks".into(), bound });
            }
            let piece = n.piece(d);
            let groups: Vec<Vec<usize>> =
                cosets.iter().map(|(x, _)| columns_where(n, &piece, |w| x.contains(w))).collect();
            let mut dims = Vec::with_capacity(items);
            for v in &views {
                let vecs = self.image_coords(v, d)?;
                dims.extend(chain_increments(&vecs, &groups, piece.ncols));
            }
            cert.feed(&dims).map_err(|e| BimodError::NotFree(format!("singular stalk: {e}")))?;
        }
        let mut out = Vec::with_capacity(idems.len());
        for j in 0..idems.len() {
            let mut h = SingularHeckeElt::zero(s1, s2);
            for (xi, (x, _)) in cosets.iter().enumerate() {
                let k = self.coset_normalization(s1, x)?;
                h.add_term(x.min.clone(), &cert.grk(j * nx + xi).shift(k));
            }
            out.push(h);
        }
        Ok(out)
    }

    /// Hilbert series `dim V_d` for `d` in `lo..=hi`.
    pub fn sing_hilbert(&self, v: &SingularObject<F>, lo: i32, hi: i32) -> Result<Vec<usize>, BimodError> {
        (lo..=hi).map(|d| self.sing_dim(v, d)).collect()
    }
}
