//! Morphisms between push-forwards `π_*N₁ → π_*N₂` of regular objects, and graded Hom spaces.
//!
//! As a left `R^{S₁}`-module, `π_*N` is free on `∂_u(p)·m_i` (`u ∈ W_{S₁}`), so a left-linear
//! map is determined by the images of these generators, each an arbitrary element of the
//! target. Right `R^{S₂}`-linearity is imposed on a generating set of the algebra `R^{S₂}`.
//! The resulting space is an `R`-module through the target (`R` is commutative), free over
//! `R` for Soergel-type objects, of generic rank `Σ_y mult_y(B_{S₁}⊗N₁⊗B_{S₂})·mult_y(N₂)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use sbim_algebra::linalg::{kernel, SparseVec};
use sbim_algebra::{monomials, Field, Laurent, Poly};
use sbim_coxeter::{Element, Subset};

use crate::engine::Engine;
use crate::error::BimodError;
use crate::grk::certified_grk;
use crate::object::{pdeg, RegularObject};

/// A homogeneous map `π_*N₁ → π_*N₂` of `(R^{S₁}, R^{S₂})`-bimodules.
#[derive(Clone, Debug)]
pub struct Morphism<F: Field> {
    pub s1: Subset,
    pub s2: Subset,
    pub source: Arc<RegularObject<F>>,
    pub target: Arc<RegularObject<F>>,
    pub degree: i32,
    /// `images[i·|W_{S₁}| + u]`: left coefficients of `φ(∂_u(p)·m_i)` over the target basis.
    pub images: Vec<Vec<Poly<F>>>,
}

/// Coordinates of the degree-`k` maps: one polynomial block per (generator, target basis vector).
#[derive(Clone, Debug)]
pub struct HomLayout {
    pub degree: i32,
    /// `(offset, polynomial degree)` of the block `(b, l)` at index `b·rank N₂ + l`.
    blocks: Vec<Option<(usize, usize)>>,
    rank2: usize,
    pub dim: usize,
}

/// A basis of `Hom^k(π_*N₁, π_*N₂)`.
#[derive(Clone, Debug)]
pub struct HomSpace<F: Field> {
    pub layout: HomLayout,
    pub basis: Vec<Morphism<F>>,
}

impl HomLayout {
    fn new(nvars: usize, gen_deg: &[i32], target_deg: &[i32], k: i32) -> Self {
        let mut blocks = Vec::with_capacity(gen_deg.len() * target_deg.len());
        let mut dim = 0;
        for &db in gen_deg {
            for &dl in target_deg {
                match pdeg(db + k - dl) {
                    Some(p) => {
                        blocks.push(Some((dim, p)));
                        dim += monomials(nvars, p).len();
                    }
                    None => blocks.push(None),
                }
            }
        }
        HomLayout { degree: k, blocks, rank2: target_deg.len(), dim }
    }

    /// Flatten a morphism of this degree.
    pub fn to_vector<F: Field>(&self, phi: &Morphism<F>) -> SparseVec<F> {
        let n = phi.target.nvars;
        let mut v = Vec::new();
        for (b, img) in phi.images.iter().enumerate() {
            for (l, c) in img.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (off, p) = self.blocks[b * self.rank2 + l].expect("morphism degree matches the layout");
                let basis = monomials(n, p);
                for (mu, a) in c.terms() {
                    v.push((off + basis.index_of(mu).expect("homogeneous morphism"), a.clone()));
                }
            }
        }
        v.sort_by_key(|e| e.0);
        v
    }
}

impl<F: Field> Morphism<F> {
    /// Number of generators `∂_u(p)·m_i`.
    pub fn num_generators(&self) -> usize {
        self.images.len()
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|img| img.iter().all(|c| c.is_zero()))
    }

    /// `Σ_j c_j φ_j` for maps of a common degree.
    pub fn combination(maps: &[Morphism<F>], coeffs: &[F]) -> Morphism<F> {
        let first = &maps[0];
        let n = first.target.nvars;
        let mut images = vec![vec![Poly::zero(n); first.target.rank()]; first.images.len()];
        for (phi, c) in maps.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (acc, img) in images.iter_mut().zip(&phi.images) {
                for (a, x) in acc.iter_mut().zip(img) {
                    if !x.is_zero() {
                        *a = &*a + &x.scale(c);
                    }
                }
            }
        }
        Morphism { images, ..first.clone() }
    }

    /// `self − other` (same degree, source and target).
    pub fn sub(&self, other: &Morphism<F>) -> Morphism<F> {
        Morphism::combination(&[self.clone(), other.clone()], &[F::one(), -F::one()])
    }
}

impl<F: Field> Engine<F> {
    /// Graded degrees `deg m_i + 2(ℓ(w_{S₁}) − ℓ(u))` of the generators `∂_u(p)·m_i`.
    pub fn generator_degrees(&self, s1: Subset, m: &RegularObject<F>) -> Result<Vec<i32>, BimodError> {
        let fd = self.frob_degrees(s1)?;
        Ok(m.degrees.iter().flat_map(|d| fd.iter().map(move |e| d + e)).collect())
    }

    /// The identity of `π_*N`.
    pub fn identity_morphism(&self, s1: Subset, s2: Subset, m: &Arc<RegularObject<F>>) -> Result<Morphism<F>, BimodError> {
        let basis = self.frob_basis(s1)?;
        let n = self.nvars();
        let mut images = Vec::with_capacity(m.rank() * basis.len());
        for i in 0..m.rank() {
            for b in &basis {
                let mut img = vec![Poly::zero(n); m.rank()];
                img[i] = b.clone();
                images.push(img);
            }
        }
        Ok(Morphism { s1, s2, source: m.clone(), target: m.clone(), degree: 0, images })
    }

    /// `φ(Σ_i x_i m_i)`.
    pub fn apply(&self, phi: &Morphism<F>, x: &[Poly<F>]) -> Result<Vec<Poly<F>>, BimodError> {
        let n = self.nvars();
        let mut out = vec![Poly::zero(n); phi.target.rank()];
        let nu = phi.images.len() / phi.source.rank().max(1);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let a = self.express(phi.s1, xi)?;
            for (u, au) in a.iter().enumerate() {
                if au.is_zero() {
                    continue;
                }
                for (o, c) in out.iter_mut().zip(&phi.images[i * nu + u]) {
                    if !c.is_zero() {
                        *o = &*o + &(au * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `φ` applied, with `None` standing for the identity.
    pub fn apply_opt(&self, phi: Option<&Morphism<F>>, x: &[Poly<F>]) -> Result<Vec<Poly<F>>, BimodError> {
        match phi {
            Some(p) => self.apply(p, x),
            None => Ok(x.to_vec()),
        }
    }

    /// `ψ ∘ φ`.
    pub fn compose(&self, psi: &Morphism<F>, phi: &Morphism<F>) -> Result<Morphism<F>, BimodError> {
        let images = phi.images.iter().map(|img| self.apply(psi, img)).collect::<Result<Vec<_>, _>>()?;
        Ok(Morphism {
            s1: phi.s1,
            s2: phi.s2,
            source: phi.source.clone(),
            target: psi.target.clone(),
            degree: phi.degree + psi.degree,
            images,
        })
    }

    /// Basis of `Hom^k(π_*N₁, π_*N₂)` for push-forwards to `(S₁, S₂)`.
    pub fn hom_space(
        &self,
        s1: Subset,
        s2: Subset,
        n1: &Arc<RegularObject<F>>,
        n2: &Arc<RegularObject<F>>,
        k: i32,
    ) -> Result<HomSpace<F>, BimodError> {
        let n = self.nvars();
        let fbasis = self.frob_basis(s1)?;
        let nu = fbasis.len();
        let gdeg = self.generator_degrees(s1, n1)?;
        let layout = HomLayout::new(n, &gdeg, &n2.degrees, k);
        let (r1, r2) = (n1.rank(), n2.rank());
        let gens = self.invariant_generators(s2)?;

        // Constraint blocks (b, g, q).
        let mut cblocks: Vec<Option<(usize, usize)>> = Vec::new();
        let mut ncols = 0;
        for &db in &gdeg {
            for g in &gens {
                let dg = 2 * g.degree().unwrap_or(0) as i32;
                for &dq in &n2.degrees {
                    match pdeg(db + k + dg - dq) {
                        Some(p) => {
                            cblocks.push(Some((ncols, p)));
                            ncols += monomials(n, p).len();
                        }
                        None => cblocks.push(None),
                    }
                }
            }
        }
        let cidx = |b: usize, g: usize, q: usize| cblocks[(b * gens.len() + g) * r2 + q];
        let mut images: Vec<SparseVec<F>> = vec![Vec::new(); layout.dim];
        let push = |unk: (usize, usize), factor: &Poly<F>, con: (usize, usize), images: &mut Vec<SparseVec<F>>| {
            let (uoff, up) = unk;
            let (coff, cp) = con;
            let ub = monomials(n, up);
            let cb = monomials(n, cp);
            for (mi, mu) in ub.monos.iter().enumerate() {
                for (nu_, a) in factor.terms() {
                    let idx = cb.index_of(&mu.mul(nu_)).expect("constraint degree");
                    images[uoff + mi].push((coff + idx, a.clone()));
                }
            }
        };
        for g_idx in 0..gens.len() {
            let a1 = self.right_matrix(n1, &gens[g_idx])?;
            let a2 = self.right_matrix(n2, &gens[g_idx])?;
            for i in 0..r1 {
                for (u, pu) in fbasis.iter().enumerate() {
                    let b = i * nu + u;
                    // Σ_{j,u'} a_{ju'} r^{(ju')}_q
                    for (j, aij) in a1[i].iter().enumerate() {
                        if aij.is_zero() {
                            continue;
                        }
                        let coeffs = self.express(s1, &(pu * aij))?;
                        for (u2, a) in coeffs.iter().enumerate() {
                            if a.is_zero() {
                                continue;
                            }
                            let b2 = j * nu + u2;
                            for q in 0..r2 {
                                if let Some(unk) = layout.blocks[b2 * r2 + q] {
                                    let con = cidx(b, g_idx, q).expect("constraint block exists");
                                    push(unk, a, con, &mut images);
                                }
                            }
                        }
                    }
                    // − Σ_l r^{(b)}_l A₂(g)_{lq}
                    for (l, row) in a2.iter().enumerate() {
                        let Some(unk) = layout.blocks[b * r2 + l] else { continue };
                        for (q, c) in row.iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let con = cidx(b, g_idx, q).expect("constraint block exists");
                            push(unk, &-c.clone(), con, &mut images);
                        }
                    }
                }
            }
        }
        for v in images.iter_mut() {
            v.sort_by_key(|e| e.0);
            let mut merged: SparseVec<F> = Vec::with_capacity(v.len());
            for (i, c) in v.drain(..) {
                match merged.last_mut() {
                    Some((j, d)) if *j == i => *d = d.clone() + c,
                    _ => merged.push((i, c)),
                }
            }
            merged.retain(|(_, c)| !c.is_zero());
            *v = merged;
        }
        let ker = kernel(ncols, &images);
        let basis = ker.into_iter().map(|combo| self.morphism_from_vector(s1, s2, n1, n2, &layout, &combo)).collect();
        Ok(HomSpace { layout, basis })
    }

    /// The morphism with the given layout coordinates.
    pub fn morphism_from_vector(
        &self,
        s1: Subset,
        s2: Subset,
        n1: &Arc<RegularObject<F>>,
        n2: &Arc<RegularObject<F>>,
        layout: &HomLayout,
        v: &[(usize, F)],
    ) -> Morphism<F> {
        let n = self.nvars();
        let r2 = n2.rank();
        let nb = layout.blocks.len() / r2.max(1);
        let mut images = vec![vec![Poly::zero(n); r2]; nb];
        // Invert the block layout: offsets are increasing in block order.
        let mut starts: Vec<(usize, usize, usize)> = Vec::new();
        for (bi, blk) in layout.blocks.iter().enumerate() {
            if let Some((off, p)) = blk {
                starts.push((*off, bi, *p));
            }
        }
        for (idx, c) in v {
            let pos = starts.partition_point(|s| s.0 <= *idx) - 1;
            let (off, bi, p) = starts[pos];
            let mu = monomials(n, p).monos[idx - off];
            images[bi / r2][bi % r2].add_term(mu, c.clone());
        }
        Morphism { s1, s2, source: n1.clone(), target: n2.clone(), degree: layout.degree, images }
    }

    /// Generic rank over `R` of `Hom(π_*N₁, π_*N₂)`.
    pub fn hom_rank(&self, s1: Subset, s2: Subset, n1: &RegularObject<F>, n2: &RegularObject<F>) -> Result<usize, BimodError> {
        let g = self.group();
        let p1 = g.parabolic(s1)?;
        let p2 = g.parabolic(s2)?;
        let mut left: BTreeMap<Element, usize> = BTreeMap::new();
        for u in &p1.elements {
            for a in &n1.weights {
                let ua = g.mul(u, a)?;
                for w in &p2.elements {
                    *left.entry(g.mul(&ua, w)?).or_insert(0) += 1;
                }
            }
        }
        let right = n2.weight_multiplicities();
        Ok(left.iter().map(|(y, c)| c * right.get(y).copied().unwrap_or(0)).sum())
    }

    /// Certified graded rank of `Hom(π_*N₁, π_*N₂)` over `R^{S₁}`; `Hom^k` contributes `v^{-k}`.
    pub fn hom_grk(
        &self,
        s1: Subset,
        s2: Subset,
        n1: &Arc<RegularObject<F>>,
        n2: &Arc<RegularObject<F>>,
        bound: Option<i32>,
    ) -> Result<Laurent, BimodError> {
        let rank = self.hom_rank(s1, s2, n1, n2)?;
        let gdeg = self.generator_degrees(s1, n1)?;
        let kmin = n2.min_degree() - gdeg.iter().copied().max().unwrap_or(0);
        let kmax = bound.unwrap_or(n2.max_degree() - gdeg.iter().copied().min().unwrap_or(0) + self.degree_cap);
        let over_r = certified_grk(self.nvars(), kmin, rank, kmax, "Hom space", |k| {
            Ok(self.hom_space(s1, s2, n1, n2, k)?.basis.len())
        })?;
        let p1 = self.group().parabolic(s1)?;
        let mut factor = Laurent::zero();
        for w in &p1.elements {
            factor.add_term(-2 * w.length() as i32, 1);
        }
        Ok(&over_r * &factor)
    }
}
