//! Duality `D(M) = Hom_{-R}(M, R)` of regular objects and of push-forwards.
//!
//! A homogeneous right basis `p_j = Σ_k e_k ĉ_{jk}` of `M` is found greedily by degree; the
//! dual basis `φ_l` is determined on the weight vectors by `Ĉ·Λ = I`. Both actions on a
//! functional go through its argument, `(fφg)(m) = φ(fmg)`, so the coordinate functional `ε_k`
//! keeps the weight `w_k` and `φ_l = Σ_k ε_k Λ_{kl} = Σ_k w_k(Λ_{kl}) ε_k`; rescaling each `ε_k`
//! by the common denominator of its row of `Λ` gives polynomial coordinates again.

use std::sync::Arc;

use sbim_algebra::linalg::Echelon;
use sbim_algebra::{monomials, Field, Poly};

use crate::engine::Engine;
use crate::error::BimodError;
use crate::object::{pdeg, RegularObject};
use crate::singular::SingularObject;

/// Inverse of a square polynomial matrix as `(numerators, denominators)` with
/// `A^{-1}_{kl} = num[k][l] / den[k]`, by fraction-free Gauss–Jordan elimination.
pub fn invert_poly_matrix<F: Field>(a: &[Vec<Poly<F>>], nvars: usize) -> Option<(Vec<Vec<Poly<F>>>, Vec<Poly<F>>)> {
    let r = a.len();
    let mut m: Vec<Vec<Poly<F>>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| if i == j { Poly::one(nvars) } else { Poly::zero(nvars) }));
            v
        })
        .collect();
    let mut prev = Poly::one(nvars);
    for k in 0..r {
        let p = (k..r).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        for i in 0..r {
            if i == k {
                continue;
            }
            let (mkk, mik) = (m[k][k].clone(), m[i][k].clone());
            for j in 0..2 * r {
                let t = &(&mkk * &m[i][j]) - &(&mik * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("fraction-free elimination divides exactly");
            }
        }
        prev = m[k][k].clone();
    }
    let den = (0..r).map(|k| m[k][k].clone()).collect();
    let num = m.into_iter().map(|row| row[r..].to_vec()).collect();
    Some((num, den))
}

impl<F: Field> Engine<F> {
    /// A homogeneous basis of `M` as a right `R`-module, as weight coordinates with degrees.
    pub fn right_basis(&self, m: &RegularObject<F>) -> Result<Vec<(i32, Vec<Poly<F>>)>, BimodError> {
        let n = self.nvars();
        let rank = m.rank();
        let mut gens: Vec<(i32, Vec<Poly<F>>)> = Vec::new();
        let bound = self.bound_for(m);
        let mut d = m.min_degree();
        while gens.len() < rank {
            if d > bound {
                return Err(BimodError::NotRightFree(format!("no right basis up to degree {bound}")));
            }
            let piece = m.piece(d);
            let mut ech = Echelon::new(piece.ncols, false);
            for (dg, c) in &gens {
                let Some(p) = pdeg(d - dg) else { continue };
                for mu in &monomials(n, p).monos {
                    let f = Poly::monomial(n, *mu, F::one());
                    let y: Vec<Poly<F>> = c
                        .iter()
                        .zip(&m.weights)
                        .map(|(ck, w)| if ck.is_zero() { ck.clone() } else { ck * &self.act(w, &f) })
                        .collect();
                    ech.insert(&m.flatten(&piece, &y));
                }
            }
            for idx in 0..piece.labels.len() {
                if gens.len() == rank {
                    break;
                }
                if ech.contains(&piece.rows[idx]) {
                    continue;
                }
                ech.insert(&piece.rows[idx]);
                let x = m.from_labels(&piece, &[(idx, F::one())]);
                gens.push((d, m.coords_of(&x)));
            }
            d += 1;
        }
        let mut left: Vec<i32> = m.degrees.clone();
        let mut right: Vec<i32> = gens.iter().map(|g| g.0).collect();
        left.sort();
        right.sort();
        if left != right {
            return Err(BimodError::NotRightFree("right generators do not match the Hilbert series".into()));
        }
        Ok(gens)
    }

    /// `D(M) = Hom_{-R}(M, R)` with `(fφg)(m) = φ(fmg)`.
    pub fn dual(&self, m: &RegularObject<F>) -> Result<Arc<RegularObject<F>>, BimodError> {
        let n = self.nvars();
        let rank = m.rank();
        let gens = self.right_basis(m)?;
        let winv: Vec<_> = m.weights.iter().map(|w| self.group().inv(w)).collect();
        let chat: Vec<Vec<Poly<F>>> =
            gens.iter().map(|(_, c)| c.iter().zip(&winv).map(|(ck, wi)| self.act(wi, ck)).collect()).collect();
        let (mut num, mut den) = invert_poly_matrix(&chat, n)
            .ok_or_else(|| BimodError::NotRightFree("right generators are dependent".into()))?;
        for k in 0..rank {
            for r in self.reflection_roots() {
                loop {
                    let Some(dk) = den[k].div_exact(r) else { break };
                    let divided: Option<Vec<Poly<F>>> = num[k].iter().map(|c| c.div_exact(r)).collect();
                    match divided {
                        Some(row) => {
                            num[k] = row;
                            den[k] = dk;
                        }
                        None => break,
                    }
                }
            }
        }
        // Verify Ĉ·Λ = I with Λ_{kl} = num[k][l] / den[k].
        let common: Poly<F> = den.iter().fold(Poly::one(n), |a, b| &a * b);
        let others: Vec<Poly<F>> = den.iter().map(|d| common.div_exact(d).unwrap()).collect();
        for j in 0..rank {
            for l in 0..rank {
                let mut acc = Poly::zero(n);
                for k in 0..rank {
                    if chat[j][k].is_zero() || num[k][l].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&(&chat[j][k] * &num[k][l]) * &others[k]);
                }
                let expect = if j == l { common.clone() } else { Poly::zero(n) };
                if acc != expect {
                    return Err(BimodError::NotRightFree("dual basis verification failed".into()));
                }
            }
        }
        let degrees: Vec<i32> = gens.iter().map(|g| -g.0).collect();
        let col_deg: Vec<i32> = (0..rank)
            .map(|k| -m.col_deg[k] - 2 * den[k].degree().unwrap_or(0) as i32)
            .collect();
        let coords: Vec<Vec<Poly<F>>> =
            (0..rank).map(|l| (0..rank).map(|k| self.act(&m.weights[k], &num[k][l])).collect()).collect();
        for (l, row) in coords.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                if !c.is_zero() && (!c.is_homogeneous() || 2 * c.degree().unwrap() as i32 != degrees[l] - col_deg[k]) {
                    return Err(BimodError::NotRightFree("inhomogeneous dual coordinates".into()));
                }
            }
        }
        Ok(Arc::new(RegularObject::new(n, degrees, m.weights.clone(), col_deg, coords)))
    }

    /// `D(π_*N) = π_*(D(N))(2ℓ(w_{S₂}))`.
    pub fn sing_dual(&self, v: &SingularObject<F>) -> Result<SingularObject<F>, BimodError> {
        if v.idem.is_some() {
            return Err(BimodError::Unsupported("duality of idempotent summands".into()));
        }
        let d = self.dual(&v.source)?;
        let l2 = self.longest_length(v.s2)? as i32;
        self.induced(&self.shift(&d, 2 * l2), v.s1, v.s2)
    }
}
