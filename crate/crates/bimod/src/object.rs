//! Regular objects: graded `R`-bimodules that are free as left modules, stored as left
//! `R`-lattices inside their localization `⊕_k Q e_k` with `e_k f = w_k(f) e_k`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use sbim_algebra::linalg::{Echelon, SparseVec};
use sbim_algebra::{monomials, Field, Mono, Poly};
use sbim_coxeter::Element;

/// Polynomial degree of graded degree `g` (deg V = 2), if `R_g ≠ 0`.
pub fn pdeg(g: i32) -> Option<usize> {
    (g >= 0 && g % 2 == 0).then_some((g / 2) as usize)
}

/// A regular object.
///
/// The left basis element `m_i` (graded degree `degrees[i]`) is `Σ_k coords[i][k] e_k`; the
/// weight vector `e_k` has weight `weights[k]` and degree `col_deg[k]`, so `coords[i][k]` is
/// homogeneous of graded degree `degrees[i] − col_deg[k]`. The number of weight vectors equals
/// the rank and the coordinate matrix is invertible over `Frac(R)`.
pub struct RegularObject<F: Field> {
    pub nvars: usize,
    pub degrees: Vec<i32>,
    pub weights: Vec<Element>,
    pub col_deg: Vec<i32>,
    pub coords: Vec<Vec<Poly<F>>>,
    pieces: Mutex<HashMap<i32, Arc<Piece<F>>>>,
}

impl<F: Field> Clone for RegularObject<F> {
    fn clone(&self) -> Self {
        Self::new(self.nvars, self.degrees.clone(), self.weights.clone(), self.col_deg.clone(), self.coords.clone())
    }
}

impl<F: Field> std::fmt::Debug for RegularObject<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RegularObject")
            .field("degrees", &self.degrees)
            .field("weights", &self.weights)
            .field("col_deg", &self.col_deg)
            .finish()
    }
}

/// The degree-`d` part `M_d = ⊕_i R_{d − deg m_i} m_i` as a vector space, with each
/// `𝕂`-basis vector `μ m_i` written in flattened weight coordinates.
pub struct Piece<F: Field> {
    pub degree: i32,
    /// `(i, μ)` for the basis vector `μ m_i`.
    pub labels: Vec<(usize, Mono)>,
    /// Start of the labels of `m_i` (labels of one `m_i` follow the monomial basis order).
    pub offsets: Vec<usize>,
    /// Start of the coordinate block of `e_k`, when `R_{d − col_deg k} ≠ 0`.
    pub col_offsets: Vec<Option<usize>>,
    pub ncols: usize,
    pub rows: Vec<SparseVec<F>>,
    solver: OnceLock<Echelon<F>>,
}

impl<F: Field> RegularObject<F> {
    pub fn new(
        nvars: usize,
        degrees: Vec<i32>,
        weights: Vec<Element>,
        col_deg: Vec<i32>,
        coords: Vec<Vec<Poly<F>>>,
    ) -> Self {
        RegularObject { nvars, degrees, weights, col_deg, coords, pieces: Mutex::new(HashMap::new()) }
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn min_degree(&self) -> i32 {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> i32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Weights with their multiplicities.
    pub fn weight_multiplicities(&self) -> BTreeMap<Element, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w.clone()).or_insert(0) += 1;
        }
        m
    }

    /// `dim_𝕂 M_d`.
    pub fn dim(&self, d: i32) -> usize {
        self.degrees.iter().filter_map(|&g| pdeg(d - g)).map(|p| monomials(self.nvars, p).len()).sum()
    }

    /// Weight coordinates of the element `Σ_i x_i m_i`.
    pub fn coords_of(&self, x: &[Poly<F>]) -> Vec<Poly<F>> {
        let mut out = vec![Poly::zero(self.nvars); self.rank()];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (k, c) in self.coords[i].iter().enumerate() {
                if !c.is_zero() {
                    out[k] = &out[k] + &(xi * c);
                }
            }
        }
        out
    }

    /// The degree-`d` piece (cached).
    pub fn piece(&self, d: i32) -> Arc<Piece<F>> {
        if let Some(p) = self.pieces.lock().unwrap().get(&d) {
            return p.clone();
        }
        let n = self.nvars;
        let mut labels = Vec::new();
        let mut offsets = Vec::with_capacity(self.rank());
        for (i, &g) in self.degrees.iter().enumerate() {
            offsets.push(labels.len());
            if let Some(p) = pdeg(d - g) {
                labels.extend(monomials(n, p).monos.iter().map(|m| (i, *m)));
            }
        }
        let mut col_offsets = Vec::with_capacity(self.rank());
        let mut ncols = 0;
        for &c in &self.col_deg {
            match pdeg(d - c) {
                Some(p) => {
                    col_offsets.push(Some(ncols));
                    ncols += monomials(n, p).len();
                }
                None => col_offsets.push(None),
            }
        }
        let rows = labels
            .iter()
            .map(|(i, mu)| {
                let mut v: SparseVec<F> = Vec::new();
                for (k, c) in self.coords[*i].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let off = col_offsets[k].expect("coordinate degree matches the piece");
                    let basis = monomials(n, pdeg(d - self.col_deg[k]).unwrap());
                    for (nu, a) in c.terms() {
                        v.push((off + basis.index_of(&mu.mul(nu)).unwrap(), a.clone()));
                    }
                }
                v.sort_by_key(|e| e.0);
                v
            })
            .collect();
        let piece = Arc::new(Piece { degree: d, labels, offsets, col_offsets, ncols, rows, solver: OnceLock::new() });
        self.pieces.lock().unwrap().insert(d, piece.clone());
        piece
    }

    /// Flatten weight coordinates (homogeneous of degree `d`) into the piece's columns.
    pub fn flatten(&self, piece: &Piece<F>, coords: &[Poly<F>]) -> SparseVec<F> {
        let d = piece.degree;
        let mut v = Vec::new();
        for (k, c) in coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let off = piece.col_offsets[k].expect("coordinate degree matches the piece");
            let basis = monomials(self.nvars, pdeg(d - self.col_deg[k]).unwrap());
            for (nu, a) in c.terms() {
                v.push((off + basis.index_of(nu).expect("homogeneous coordinate"), a.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        v
    }

    /// Left coefficients of the element with the given label-space vector.
    pub fn from_labels(&self, piece: &Piece<F>, v: &[(usize, F)]) -> Vec<Poly<F>> {
        let mut out = vec![Poly::zero(self.nvars); self.rank()];
        for (idx, c) in v {
            let (i, mu) = &piece.labels[*idx];
            out[*i].add_term(*mu, c.clone());
        }
        out
    }

    /// Label-space vector of a homogeneous element of degree `piece.degree` given by left coefficients.
    pub fn to_labels(&self, piece: &Piece<F>, x: &[Poly<F>]) -> SparseVec<F> {
        let mut v = Vec::new();
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            let p = pdeg(piece.degree - self.degrees[i]).expect("homogeneous element");
            let basis = monomials(self.nvars, p);
            for (mu, a) in xi.terms() {
                v.push((piece.offsets[i] + basis.index_of(mu).expect("homogeneous element"), a.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        v
    }

    /// Solve `Σ_i x_i m_i = y` for weight coordinates `y` homogeneous of degree `d`;
    /// `None` when `y` is not in the lattice.
    pub fn solve_coords(&self, d: i32, y: &[Poly<F>]) -> Option<Vec<Poly<F>>> {
        let piece = self.piece(d);
        if y.iter().all(|c| c.is_zero()) {
            return Some(vec![Poly::zero(self.nvars); self.rank()]);
        }
        if piece.col_offsets.iter().zip(y).any(|(o, c)| o.is_none() && !c.is_zero()) {
            return None;
        }
        let solver = piece.solver.get_or_init(|| {
            let mut e = Echelon::new(piece.ncols, true);
            for r in &piece.rows {
                e.insert(r);
            }
            e
        });
        let combo = solver.solve(&self.flatten(&piece, y))?;
        let sparse: Vec<(usize, F)> = combo.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        Some(self.from_labels(&piece, &sparse))
    }
}
