//! Truncations `M_I`, standard subquotients `M_{≥x}/M_{>x}` and the regular character.
//!
//! `Γ_I M` (elements whose weight coordinates vanish outside `I`) is the kernel of the
//! projection onto the coordinates outside `I`. Listing the weights along a linear extension
//! of the Bruhat order from the bottom, the rank of the projection onto the first `j` weight
//! blocks is `dim M − dim Γ_{I_j}` for the open complement `I_j`; by independence of the
//! subquotient from the chosen open pair, the rank increment of the `x` block is
//! `dim (M_{≥x}/M_{>x})_d`. One column echelon per degree thus yields every stalk at once.

use std::collections::BTreeMap;

use sbim_algebra::linalg::{Echelon, SparseVec};
use sbim_algebra::{Field, Laurent};
use sbim_coxeter::Element;
use sbim_hecke::HeckeElt;

use crate::engine::Engine;
use crate::error::BimodError;
use crate::grk::GrkCertifier;
use crate::object::{Piece, RegularObject};

/// Rank increments of the column groups, taken in order, for the row space spanned by `vectors`.
pub(crate) fn chain_increments<F: Field>(vectors: &[SparseVec<F>], groups: &[Vec<usize>], ncols: usize) -> Vec<usize> {
    let mut cols: Vec<SparseVec<F>> = vec![Vec::new(); ncols];
    for (vi, v) in vectors.iter().enumerate() {
        for (c, a) in v {
            cols[*c].push((vi, a.clone()));
        }
    }
    let mut ech = Echelon::new(vectors.len(), false);
    let mut out = Vec::with_capacity(groups.len());
    for g in groups {
        let before = ech.rank();
        for &c in g {
            if ech.rank() == vectors.len() {
                break;
            }
            if !cols[c].is_empty() {
                ech.insert(&cols[c]);
            }
        }
        out.push(ech.rank() - before);
    }
    out
}

/// Columns of the piece belonging to the weight vectors selected by `pick`.
pub(crate) fn columns_where<F: Field>(
    m: &RegularObject<F>,
    piece: &Piece<F>,
    mut pick: impl FnMut(&Element) -> bool,
) -> Vec<usize> {
    let mut out = Vec::new();
    for (k, w) in m.weights.iter().enumerate() {
        if !pick(w) {
            continue;
        }
        if let Some(off) = piece.col_offsets[k] {
            let len = sbim_algebra::poly::num_monomials(m.nvars, ((piece.degree - m.col_deg[k]) / 2) as usize);
            out.extend(off..off + len);
        }
    }
    out
}

impl<F: Field> Engine<F> {
    /// Weights of `m` along a linear extension of the Bruhat order, bottom first.
    pub(crate) fn weights_bottom_up(&self, m: &RegularObject<F>) -> Vec<(Element, usize)> {
        let mut ws: Vec<(Element, usize)> = m.weight_multiplicities().into_iter().collect();
        ws.sort_by(|a, b| (a.0.length(), &a.0).cmp(&(b.0.length(), &b.0)));
        ws
    }

    /// Dimensions of `(M_{≥x}/M_{>x})_d` for every weight `x`, bottom-first order.
    pub fn stalk_dims(&self, m: &RegularObject<F>, d: i32) -> Vec<(Element, usize)> {
        let ws = self.weights_bottom_up(m);
        let piece = m.piece(d);
        let groups: Vec<Vec<usize>> = ws.iter().map(|(x, _)| columns_where(m, &piece, |w| w == x)).collect();
        let inc = chain_increments(&piece.rows, &groups, piece.ncols);
        ws.into_iter().map(|(x, _)| x).zip(inc).collect()
    }

    /// Certified graded ranks of every standard subquotient `M_{≥x}/M_{>x}` (free of rank
    /// equal to the multiplicity of the weight `x`).
    pub fn std_grks(&self, m: &RegularObject<F>) -> Result<BTreeMap<Element, Laurent>, BimodError> {
        let ws = self.weights_bottom_up(m);
        let bound = self.bound_for(m);
        let mut cert = GrkCertifier::new(
            self.nvars(),
            m.min_degree(),
            (0..ws.len()).collect(),
            ws.iter().map(|(_, c)| *c as i64).collect(),
            vec![vec![1]; ws.len()],
        );
        while !cert.done() {
            let d = cert.next_degree();
            if d > bound {
                return Err(BimodError::DegreeBoundTooSmall { what: "standard subquotients".into(), bound });
            }
            let dims: Vec<usize> = self.stalk_dims(m, d).into_iter().map(|(_, h)| h).collect();
            cert.feed(&dims).map_err(|e| BimodError::NotFree(format!("standard subquotient: {e}")))?;
        }
        Ok(ws.into_iter().enumerate().map(|(i, (x, _))| (x, cert.grk(i))).collect())
    }

    /// Graded rank of `M_{≥w}/M_{>w}` (zero off the support).
    pub fn std_grk(&self, m: &RegularObject<F>, w: &Element) -> Result<Laurent, BimodError> {
        Ok(self.std_grks(m)?.remove(w).unwrap_or_else(Laurent::zero))
    }

    /// `ch(M) = Σ_x v^{ℓ(x)} grk(M_{≥x}/M_{>x}) H_x`.
    pub fn ch(&self, m: &RegularObject<F>) -> Result<HeckeElt, BimodError> {
        let mut h = HeckeElt::zero();
        for (x, g) in self.std_grks(m)? {
            h.add_term(x.clone(), &g.shift(x.length() as i32));
        }
        Ok(h)
    }

    /// `dim (Γ_I M)_d` for the weight set selected by `inside`.
    pub fn truncation_dim(&self, m: &RegularObject<F>, d: i32, inside: impl Fn(&Element) -> bool) -> usize {
        let piece = m.piece(d);
        let cols = columns_where(m, &piece, |w| !inside(w));
        let r = chain_increments(&piece.rows, &[cols], piece.ncols)[0];
        piece.rows.len() - r
    }
}
