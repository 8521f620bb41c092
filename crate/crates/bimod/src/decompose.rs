//! Splitting singular objects into indecomposables.
//!
//! The degree-0 endomorphisms of `π_*N` form a finite-dimensional algebra `A`; a summand
//! `e·π_*N` corresponds to an idempotent `e ∈ A`, with endomorphism algebra the corner `eAe`.
//! A corner is split along the coset `x` at the top of its support: degree-0 maps act on the
//! lowest nonzero degree `g` of the costalk at `x`, where each copy of `B(x)(n)` contributes
//! one dimension. A preimage of a matrix unit has a Fitting idempotent that cuts off a
//! smaller summand. Once this costalk is a line, the kernel of the action is an ideal of the
//! corner; it is nilpotent exactly when all its left-multiplication traces vanish
//! (characteristic 0), and then the corner is local. Non-nilpotent kernel elements split off
//! further idempotents.

use std::collections::BTreeMap;
use std::sync::Arc;

use sbim_algebra::linalg::{sparsify, Insert, SparseVec};
use sbim_algebra::{Echelon, Field, Poly};
use sbim_coxeter::{DoubleCoset, Element, Subset};
use sbim_hecke::SingularHeckeElt;

use crate::engine::Engine;
use crate::error::BimodError;
use crate::hom::{HomLayout, Morphism};
use crate::object::RegularObject;
use crate::singular::SingularObject;
use crate::stalk::columns_where;

/// One indecomposable summand `B(x)(n)` of a decomposition, with its idempotent.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub coset: DoubleCoset,
    pub shift: i32,
    /// Lowest degree of the costalk at `coset`.
    pub costalk_degree: i32,
    pub object: SingularObject<F>,
}

/// A decomposition of `e·π_*N` into indecomposable summands.
#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub s1: Subset,
    pub s2: Subset,
    pub summands: Vec<Summand<F>>,
}

impl<F: Field> Decomposition<F> {
    /// Multiplicities of the labels `(x₋, n)`, with the coset for each label.
    pub fn multiplicities(&self) -> Vec<(DoubleCoset, i32, usize)> {
        let mut m: BTreeMap<(usize, Element, i32), (DoubleCoset, usize)> = BTreeMap::new();
        for s in &self.summands {
            let key = (s.coset.min.length(), s.coset.min.clone(), s.shift);
            m.entry(key).or_insert_with(|| (s.coset.clone(), 0)).1 += 1;
        }
        m.into_iter().map(|((_, _, n), (x, c))| (x, n, c)).collect()
    }
}

/// Degree-0 endomorphism algebra of `π_*N`, with structure constants in a fixed basis.
struct EndAlgebra<F: Field> {
    basis: Vec<Morphism<F>>,
    layout: HomLayout,
    ech: Echelon<F>,
    table: Vec<Vec<Vec<F>>>,
    one: Vec<F>,
}

type Elt<F> = Vec<F>;

fn is_zero<F: Field>(x: &[F]) -> bool {
    x.iter().all(|c| c.is_zero())
}

fn axpy<F: Field>(acc: &mut [F], x: &[F], c: &F) {
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(x) {
        if !b.is_zero() {
            *a = a.clone() + b.clone() * c.clone();
        }
    }
}

fn sub<F: Field>(x: &[F], y: &[F]) -> Elt<F> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect()
}

impl<F: Field> EndAlgebra<F> {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn mul(&self, x: &[F], y: &[F]) -> Elt<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if !yj.is_zero() {
                    axpy(&mut out, &self.table[i][j], &(xi.clone() * yj.clone()));
                }
            }
        }
        out
    }

    fn coords(&self, phi: &Morphism<F>) -> Result<Elt<F>, BimodError> {
        self.ech
            .solve(&self.layout.to_vector(phi))
            .ok_or_else(|| BimodError::IdempotentSplitFailure("endomorphism outside the computed basis".into()))
    }

    fn morphism(&self, x: &[F]) -> Morphism<F> {
        Morphism::combination(&self.basis, x)
    }

    /// `p(a)` for a polynomial with coefficients from the constant term up, in the corner with unit `unit`.
    fn eval(&self, p: &[F], a: &[F], unit: &[F]) -> Elt<F> {
        let mut acc = vec![F::zero(); self.dim()];
        for c in p.iter().rev() {
            acc = self.mul(&acc, a);
            axpy(&mut acc, unit, c);
        }
        acc
    }

    /// Monic minimal polynomial of `a` in the corner with unit `unit`.
    fn min_poly(&self, a: &[F], unit: &[F]) -> Vec<F> {
        let mut ech = Echelon::new(self.dim(), true);
        let mut p = unit.to_vec();
        loop {
            if let Insert::Dependent(Some(k)) = ech.insert(&sparsify(&p)) {
                let mut out = vec![F::zero(); ech.num_inserted()];
                for (i, c) in k {
                    out[i] = c;
                }
                return out;
            }
            p = self.mul(&p, a);
        }
    }

    /// Fitting idempotent of `a` in the corner with unit `unit`: the projection onto the part
    /// where `a` acts invertibly, a polynomial in `a`.
    fn fitting(&self, a: &[F], unit: &[F]) -> Elt<F> {
        let m = self.min_poly(a, unit);
        let j = m.iter().position(|c| !c.is_zero()).unwrap_or(m.len());
        let h = upoly::trim(m[j..].to_vec());
        if h.len() <= 1 {
            return vec![F::zero(); self.dim()];
        }
        if j == 0 {
            return unit.to_vec();
        }
        let mut xj = vec![F::zero(); j + 1];
        xj[j] = F::one();
        let (g, s, _) = upoly::ext_gcd(&xj, &h);
        let ginv = g[0].inv().expect("coprime factors have a constant gcd");
        let alpha: Vec<F> = s.iter().map(|c| c.clone() * ginv.clone()).collect();
        let e = upoly::divrem(&upoly::mul(&alpha, &xj), &m).1;
        self.eval(&e, a, unit)
    }
}

/// The corner `eAe` with a basis and coordinates relative to it.
struct Corner<F: Field> {
    basis: Vec<Elt<F>>,
    ech: Echelon<F>,
}

impl<F: Field> Corner<F> {
    fn new(alg: &EndAlgebra<F>, e: &[F]) -> Self {
        let mut ech = Echelon::new(alg.dim(), true);
        let mut basis = Vec::new();
        for i in 0..alg.dim() {
            let mut b = vec![F::zero(); alg.dim()];
            b[i] = F::one();
            let c = alg.mul(&alg.mul(e, &b), e);
            let sv = sparsify(&c);
            if sv.is_empty() || ech.contains(&sv) {
                continue;
            }
            ech.insert(&sv);
            basis.push(c);
        }
        Corner { basis, ech }
    }

    fn coords(&self, x: &[F]) -> Vec<F> {
        self.ech.solve(&sparsify(x)).expect("element of the corner")
    }

    /// `Tr(L_k)` on the corner.
    fn trace(&self, alg: &EndAlgebra<F>, k: &[F]) -> F {
        let mut t = F::zero();
        for (i, b) in self.basis.iter().enumerate() {
            t = t + self.coords(&alg.mul(k, b))[i].clone();
        }
        t
    }
}

/// The lowest nonzero degree of the costalk at `x`, with a basis and the action of maps on it.
struct Costalk<F: Field> {
    degree: i32,
    /// Vectors of `(e·π_*N)_g` whose projections to `x` form a basis of the costalk.
    reps: Vec<Vec<Poly<F>>>,
    ech: Echelon<F>,
    cols: Vec<usize>,
    source: Arc<RegularObject<F>>,
}

impl<F: Field> Costalk<F> {
    fn dim(&self) -> usize {
        self.reps.len()
    }

    fn project(&self, y: &[Poly<F>]) -> SparseVec<F> {
        let piece = self.source.piece(self.degree);
        let full = self.source.flatten(&piece, &self.source.coords_of(y));
        let mut out = Vec::new();
        let mut it = full.into_iter().peekable();
        for (ci, &c) in self.cols.iter().enumerate() {
            while let Some((i, _)) = it.peek() {
                if *i < c {
                    it.next();
                } else {
                    break;
                }
            }
            if let Some((i, a)) = it.peek() {
                if *i == c {
                    out.push((ci, a.clone()));
                }
            }
        }
        out
    }

    /// Matrix of the induced map, flattened row-major (`[row·dim + col]`).
    fn action(&self, eng: &Engine<F>, phi: &Morphism<F>) -> Result<Vec<F>, BimodError> {
        let c = self.dim();
        let mut out = vec![F::zero(); c * c];
        for (k, y) in self.reps.iter().enumerate() {
            let z = eng.apply(phi, y)?;
            let col = self
                .ech
                .solve(&self.project(&z))
                .ok_or_else(|| BimodError::IdempotentSplitFailure("map leaves the costalk".into()))?;
            for (r, a) in col.into_iter().enumerate() {
                out[r * c + k] = a;
            }
        }
        Ok(out)
    }
}

impl<F: Field> Engine<F> {
    fn end_algebra(&self, s1: Subset, s2: Subset, n: &Arc<RegularObject<F>>) -> Result<EndAlgebra<F>, BimodError> {
        let space = self.hom_space(s1, s2, n, n, 0)?;
        let basis = space.basis;
        let layout = space.layout;
        let mut ech = Echelon::new(layout.dim, true);
        for b in &basis {
            ech.insert(&layout.to_vector(b));
        }
        let mut alg = EndAlgebra { basis, layout, ech, table: Vec::new(), one: Vec::new() };
        let d = alg.dim();
        let mut table = vec![Vec::with_capacity(d); d];
        for (i, row) in table.iter_mut().enumerate() {
            for j in 0..d {
                row.push(alg.coords(&self.compose(&alg.basis[i], &alg.basis[j])?)?);
            }
        }
        alg.table = table;
        alg.one = alg.coords(&self.identity_morphism(s1, s2, n)?)?;
        Ok(alg)
    }

    /// Top coset of the support of `v` and the lowest nonzero degree of its costalk there.
    fn top_costalk(&self, v: &SingularObject<F>) -> Result<(DoubleCoset, Costalk<F>), BimodError> {
        let support = self.sing_support(v)?;
        let x = support.last().cloned().ok_or_else(|| BimodError::IdempotentSplitFailure("zero summand".into()))?;
        let top = self.generator_degrees(v.s1, &v.source)?.into_iter().max().unwrap_or(0);
        for d in v.source.min_degree()..=top {
            let piece = v.source.piece(d);
            let cols = columns_where(&v.source, &piece, |w| x.contains(w));
            let mut cs = Costalk { degree: d, reps: Vec::new(), ech: Echelon::new(cols.len(), true), cols, source: v.source.clone() };
            for y in self.image_vectors(v, d)? {
                let p = cs.project(&y);
                if p.is_empty() || cs.ech.contains(&p) {
                    continue;
                }
                cs.ech.insert(&p);
                cs.reps.push(y);
            }
            if !cs.reps.is_empty() {
                return Ok((x, cs));
            }
        }
        Err(BimodError::IdempotentSplitFailure("empty costalk at the top coset".into()))
    }

    /// `B(x)(n)` has its costalk at `x` starting in degree `−n − ℓ(x₊) + ℓ(w_{S₁})`.
    fn shift_from_costalk(&self, s1: Subset, x: &DoubleCoset, g: i32) -> Result<i32, BimodError> {
        Ok(-g - x.max.length() as i32 + self.longest_length(s1)? as i32)
    }

    /// Decompose `V` into indecomposable summands `B(x)(n)`.
    pub fn decompose(&self, v: &SingularObject<F>) -> Result<Decomposition<F>, BimodError> {
        let alg = self.end_algebra(v.s1, v.s2, &v.source)?;
        let e0 = match v.idem() {
            Some(e) => alg.coords(e)?,
            None => alg.one.clone(),
        };
        let view = |e: &[F]| SingularObject { s1: v.s1, s2: v.s2, source: v.source.clone(), idem: Some(Arc::new(alg.morphism(e))) };
        let fail = |m: &str| BimodError::IdempotentSplitFailure(m.into());
        let mut summands = Vec::new();
        let mut stack = vec![e0];
        while let Some(e) = stack.pop() {
            if is_zero(&e) {
                continue;
            }
            let (x, cs) = self.top_costalk(&view(&e))?;
            let corner = Corner::new(&alg, &e);
            let rho: Vec<Vec<F>> =
                corner.basis.iter().map(|b| cs.action(self, &alg.morphism(b))).collect::<Result<_, _>>()?;
            let c = cs.dim();
            if c >= 2 {
                // A preimage of the matrix unit E₁₁.
                let mut ech = Echelon::new(c * c, true);
                for r in &rho {
                    ech.insert(&sparsify(r));
                }
                let mut e11 = vec![F::zero(); c * c];
                e11[0] = F::one();
                let lambda = ech.solve(&sparsify(&e11)).ok_or_else(|| fail("costalk action is not surjective"))?;
                let mut a = vec![F::zero(); alg.dim()];
                for (l, b) in lambda.iter().zip(&corner.basis) {
                    axpy(&mut a, b, l);
                }
                let f = alg.fitting(&a, &e);
                if is_zero(&f) || f == e || alg.mul(&f, &f) != f {
                    return Err(fail("Fitting idempotent did not split the costalk"));
                }
                stack.push(sub(&e, &f));
                stack.push(f);
                continue;
            }
            // One-dimensional costalk: peel off idempotents in the kernel until it is nilpotent.
            let mut f = e;
            loop {
                let corner = Corner::new(&alg, &f);
                let images: Vec<SparseVec<F>> = corner
                    .basis
                    .iter()
                    .map(|b| Ok(sparsify(&cs.action(self, &alg.morphism(b))?)))
                    .collect::<Result<_, BimodError>>()?;
                let kernel = sbim_algebra::linalg::kernel(1, &images);
                let mut split = None;
                for kv in &kernel {
                    let mut k = vec![F::zero(); alg.dim()];
                    for (i, a) in kv {
                        axpy(&mut k, &corner.basis[*i], a);
                    }
                    if !corner.trace(&alg, &k).is_zero() {
                        split = Some(k);
                        break;
                    }
                }
                match split {
                    None => {
                        let p = F::characteristic();
                        if p != 0 && p as usize <= corner.basis.len() {
                            return Err(fail("trace test for nilpotency needs characteristic 0 or larger than the corner"));
                        }
                        let shift = self.shift_from_costalk(v.s1, &x, cs.degree)?;
                        summands.push(Summand { coset: x.clone(), shift, costalk_degree: cs.degree, object: view(&f) });
                        break;
                    }
                    Some(k) => {
                        let f1 = alg.fitting(&k, &f);
                        if is_zero(&f1) || f1 == f || alg.mul(&f1, &f1) != f1 {
                            return Err(fail("kernel element gave no proper idempotent"));
                        }
                        stack.push(f1.clone());
                        f = sub(&f, &f1);
                    }
                }
            }
        }
        summands.sort_by(|a, b| {
            (a.coset.min.length(), &a.coset.min, -a.shift).cmp(&(b.coset.min.length(), &b.coset.min, -b.shift))
        });
        Ok(Decomposition { s1: v.s1, s2: v.s2, summands })
    }

    /// Singular characters of the summands, certified jointly.
    pub fn summand_characters(&self, v: &SingularObject<F>, dec: &Decomposition<F>) -> Result<Vec<SingularHeckeElt>, BimodError> {
        let mut idems: Vec<Morphism<F>> = dec.summands.iter().map(|s| s.object.idem().unwrap().clone()).collect();
        if let Some(e) = v.idem() {
            idems.push(self.identity_morphism(v.s1, v.s2, &v.source)?.sub(e));
        }
        let mut chs = self.sing_ch_family(v.s1, v.s2, &v.source, &idems)?;
        chs.truncate(dec.summands.len());
        Ok(chs)
    }

    /// Whether two indecomposable summands are isomorphic: some degree-0 maps `f: A → B`,
    /// `g: B → A` have `g∘f` nonzero on the costalk generator of `A`, so `g∘f` is invertible.
    pub fn isomorphic(&self, a: &SingularObject<F>, b: &SingularObject<F>) -> Result<bool, BimodError> {
        if a.s1 != b.s1 || a.s2 != b.s2 {
            return Ok(false);
        }
        let (xa, ca) = self.top_costalk(a)?;
        let (xb, cb) = self.top_costalk(b)?;
        if xa.min != xb.min || ca.degree != cb.degree || ca.dim() != 1 || cb.dim() != 1 {
            return Ok(false);
        }
        let fwd = self.hom_space(a.s1, a.s2, &a.source, &b.source, 0)?.basis;
        let back = self.hom_space(a.s1, a.s2, &b.source, &a.source, 0)?.basis;
        let y = &ca.reps[0];
        let ya = self.apply_opt(a.idem(), y)?;
        let mut mids = Vec::with_capacity(fwd.len());
        for f in &fwd {
            let z = self.apply_opt(b.idem(), &self.apply(f, &ya)?)?;
            if z.iter().any(|c| !c.is_zero()) {
                mids.push(z);
            }
        }
        for g in &back {
            for z in &mids {
                let w = self.apply_opt(a.idem(), &self.apply(g, z)?)?;
                if !ca.project(&w).is_empty() {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Dense univariate polynomials, coefficients from the constant term up.
mod upoly {
    use sbim_algebra::Field;

    pub fn trim<F: Field>(mut p: Vec<F>) -> Vec<F> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    pub fn mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![F::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        trim(out)
    }

    pub fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
        let n = a.len().max(b.len());
        let get = |p: &[F], i: usize| p.get(i).cloned().unwrap_or_else(F::zero);
        trim((0..n).map(|i| get(a, i) - get(b, i)).collect())
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
        let b = trim(b.to_vec());
        let lead = b.last().expect("nonzero divisor").inv().unwrap();
        let mut r = trim(a.to_vec());
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![F::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let k = r.len() - b.len();
            let c = r.last().unwrap().clone() * lead.clone();
            for (i, bi) in b.iter().enumerate() {
                r[k + i] = r[k + i].clone() - c.clone() * bi.clone();
            }
            q[k] = c;
            r = trim(r);
        }
        (trim(q), r)
    }

    /// `(g, s, t)` with `s·a + t·b = g = gcd(a, b)`.
    pub fn ext_gcd<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>, Vec<F>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![F::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![F::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            let t2 = sub(&t0, &mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        (r0, s0, t0)
    }
}
