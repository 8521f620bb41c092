//! Exact sparse linear algebra: incremental row echelon forms with optional
//! tracking of how each pivot row was combined from the inserted vectors.
//!
//! One structure covers rank, span membership, solving and kernels: insert the
//! images of a basis one by one; a vector that reduces to zero yields a kernel
//! element through its tracked combination.

use crate::field::Field;

/// A sparse vector: strictly increasing indices with nonzero values.
pub type SparseVec<F> = Vec<(usize, F)>;

/// Convert a dense vector to sparse form.
pub fn sparsify<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c.clone())).collect()
}

/// Convert a sparse vector to dense form of length `n`.
pub fn densify<F: Field>(v: &SparseVec<F>, n: usize) -> Vec<F> {
    let mut d = vec![F::zero(); n];
    for (i, c) in v {
        d[*i] = c.clone();
    }
    d
}

fn axpy_sparse<F: Field>(acc: &mut Vec<F>, v: &SparseVec<F>, c: &F) {
    for (i, x) in v {
        if *i >= acc.len() {
            acc.resize(*i + 1, F::zero());
        }
        acc[*i] = acc[*i].clone() + x.clone() * c.clone();
    }
}

struct PivotRow<F: Field> {
    pivot: usize,
    row: SparseVec<F>,
    combo: SparseVec<F>,
}

/// Incremental row echelon form over a field.
pub struct Echelon<F: Field> {
    ncols: usize,
    track: bool,
    inserted: usize,
    rows: Vec<PivotRow<F>>,
    pivot_of: Vec<Option<usize>>,
}

/// Outcome of inserting a vector into an [`Echelon`].
pub enum Insert<F: Field> {
    /// The vector was independent and now spans a new pivot.
    Pivot,
    /// The vector was dependent; with tracking, the combination of inserted
    /// vectors (including this one with coefficient 1) that vanishes.
    Dependent(Option<SparseVec<F>>),
}

impl<F: Field> Echelon<F> {
    pub fn new(ncols: usize, track: bool) -> Self {
        Echelon { ncols, track, inserted: 0, rows: Vec::new(), pivot_of: vec![None; ncols] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn num_inserted(&self) -> usize {
        self.inserted
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|r| r.pivot)
    }

    /// Reduce a dense vector in place; returns the accumulated combination
    /// (over inserted vectors) that was subtracted, when tracking.
    fn reduce_dense(&self, w: &mut [F]) -> Vec<F> {
        let mut combo = if self.track { vec![F::zero(); self.inserted + 1] } else { Vec::new() };
        for col in 0..self.ncols {
            if w[col].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_of[col] {
                let pr = &self.rows[r];
                let c = w[col].clone();
                for (i, x) in &pr.row {
                    w[*i] = w[*i].clone() - x.clone() * c.clone();
                }
                if self.track {
                    axpy_sparse(&mut combo, &pr.combo, &c);
                }
            }
        }
        combo
    }

    /// Insert a vector; the inserted vector gets index `num_inserted()` before the call.
    pub fn insert(&mut self, v: &SparseVec<F>) -> Insert<F> {
        let mut w = densify(v, self.ncols);
        let combo = self.reduce_dense(&mut w);
        let idx = self.inserted;
        self.inserted += 1;
        let pivot = w.iter().position(|c| !c.is_zero());
        match pivot {
            None => {
                if self.track {
                    // v - Σ c_j (tracked rows) = 0, so v's own coefficient is 1.
                    let mut k: Vec<F> = combo.into_iter().map(|c| -c).collect();
                    k.resize(idx + 1, F::zero());
                    k[idx] = F::one();
                    Insert::Dependent(Some(sparsify(&k)))
                } else {
                    Insert::Dependent(None)
                }
            }
            Some(p) => {
                let inv = w[p].inv().unwrap();
                let row: SparseVec<F> =
                    sparsify(&w).into_iter().map(|(i, c)| (i, c * inv.clone())).collect();
                let combo = if self.track {
                    let mut k: Vec<F> = combo.into_iter().map(|c| -c).collect();
                    k.resize(idx + 1, F::zero());
                    k[idx] = F::one();
                    k.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (i, c * inv.clone())).collect()
                } else {
                    Vec::new()
                };
                self.pivot_of[p] = Some(self.rows.len());
                self.rows.push(PivotRow { pivot: p, row, combo });
                Insert::Pivot
            }
        }
    }

    /// Whether `v` lies in the span of the inserted vectors.
    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        let mut w = densify(v, self.ncols);
        self.reduce_untracked(&mut w);
        w.iter().all(|c| c.is_zero())
    }

    fn reduce_untracked(&self, w: &mut [F]) {
        for col in 0..self.ncols {
            if w[col].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_of[col] {
                let pr = &self.rows[r];
                let c = w[col].clone();
                for (i, x) in &pr.row {
                    w[*i] = w[*i].clone() - x.clone() * c.clone();
                }
            }
        }
    }

    /// Express `v` as a combination of the inserted vectors (requires tracking).
    /// Returns `None` when `v` is not in the span.
    pub fn solve(&self, v: &SparseVec<F>) -> Option<Vec<F>> {
        assert!(self.track, "solve requires a tracking echelon");
        let mut w = densify(v, self.ncols);
        let mut combo = self.reduce_dense(&mut w);
        if w.iter().any(|c| !c.is_zero()) {
            return None;
        }
        combo.truncate(self.inserted);
        combo.resize(self.inserted, F::zero());
        Some(combo)
    }

    /// Residue of `v` after reduction by the pivot rows.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut w = densify(v, self.ncols);
        self.reduce_untracked(&mut w);
        sparsify(&w)
    }
}

/// Rank of a list of sparse vectors with `ncols` columns.
pub fn rank<F: Field>(ncols: usize, rows: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut e = Echelon::new(ncols, false);
    for r in rows {
        e.insert(&r);
        if e.rank() == ncols {
            break;
        }
    }
    e.rank()
}

/// Basis of the kernel of the map sending basis vector `i` to `images[i]`.
pub fn kernel<F: Field>(ncols: usize, images: &[SparseVec<F>]) -> Vec<SparseVec<F>> {
    let mut e = Echelon::new(ncols, true);
    let mut out = Vec::new();
    for im in images {
        if let Insert::Dependent(Some(k)) = e.insert(im) {
            out.push(k);
        }
    }
    out
}

/// Dense matrix determinant by Gaussian elimination.
pub fn determinant<F: Field>(m: &[Vec<F>]) -> F {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m.to_vec();
    let mut det = F::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return F::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        let piv = a[c][c].clone();
        det = det * piv.clone();
        let inv = piv.inv().unwrap();
        for r in (c + 1)..n {
            if a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone() * inv.clone();
            for k in c..n {
                let t = a[c][k].clone() * f.clone();
                a[r][k] = a[r][k].clone() - t;
            }
        }
    }
    det
}
