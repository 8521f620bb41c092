//! Helpers shared by the suites: random data, independent oracles and subset bookkeeping.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use sbim_algebra::{monomials, Field, Laurent, Poly};
use sbim_coxeter::{CoxeterGroup, DoubleCoset, Element, Subset};
use sbim_hecke::HeckeElt;
use serde_json::{json, Value};

/// A random polynomial of degree `d` with small integer coefficients.
pub fn random_poly<F: Field>(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Poly<F> {
    let ms = monomials(n, d);
    Poly::from_terms(n, ms.monos.iter().map(|m| (*m, F::from_i64(rng.gen_range(-3..=3)))))
}

/// A random combination of three basis elements with monomial coefficients.
pub fn random_elt(pool: &[Element], rng: &mut ChaCha8Rng) -> HeckeElt {
    let mut x = HeckeElt::zero();
    for _ in 0..3 {
        let w = pool[rng.gen_range(0..pool.len())].clone();
        x.add_term(w, &Laurent::monomial(rng.gen_range(-2..=2), rng.gen_range(-3..=3)));
    }
    x
}

/// `a = c·b` for a nonzero constant `c`; returns `c`.
pub fn ratio<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Option<F> {
    let (m, c) = b.leading()?;
    let k = a.coeff(m).div(c);
    (!k.is_zero() && *a == b.scale(&k)).then_some(k)
}

/// Elements the suites enumerate: all of `W` when finite, else those of length ≤ 4.
pub fn sample_elements(g: &CoxeterGroup, max_len: usize) -> Vec<Element> {
    match g.all_elements() {
        Some(all) => all.iter().filter(|w| w.length() <= max_len).cloned().collect(),
        None => g.elements_up_to(max_len.min(4)),
    }
}

/// All words of length at most `n` in the generators `0..rank`.
pub fn words(rank: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for w in &layer {
            for s in 0..rank {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn finitary_subsets(g: &CoxeterGroup) -> Vec<Subset> {
    Subset::all(g.rank()).into_iter().filter(|s| g.is_finitary(*s)).collect()
}

pub fn word_name(g: &CoxeterGroup, w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter().map(|&s| g.data().name(s).to_string()).collect::<Vec<_>>().join("")
}

pub fn subset_name(g: &CoxeterGroup, s: &Subset) -> String {
    format!("{{{}}}", g.subset_names(s).join(","))
}

/// `{"code": "AssumptionFailed", "subset": [...], "reason": "..."}`.
pub fn assumption_skip(g: &CoxeterGroup, s: &Subset, reason: &str) -> Value {
    json!({"code": "AssumptionFailed", "subset": g.subset_names(s), "reason": reason})
}

/// `Hilb(R)/P_I(t²)` in degrees `0..=hi` (deg V = 2), with `P_I` given by its coefficients in
/// `t^{2i}`: the Hilbert series of the invariants of a finite reflection group.
pub fn invariant_hilbert(nvars: usize, poincare: &[i64], hi: usize) -> Vec<i64> {
    let r: Vec<i64> = (0..=hi)
        .map(|d| if d % 2 == 0 { sbim_algebra::poly::num_monomials(nvars, d / 2) as i64 } else { 0 })
        .collect();
    // Power-series division by a polynomial with constant term 1.
    let mut q = vec![0i64; hi + 1];
    for d in 0..=hi {
        let mut acc = r[d];
        for (i, c) in poincare.iter().enumerate().skip(1) {
            if 2 * i <= d {
                acc -= c * q[d - 2 * i];
            }
        }
        q[d] = acc;
    }
    q
}

/// Whether every term of `h` lies at a coset below `x`, with coefficient 1 at `x` itself.
pub fn unitriangular_at(
    g: &CoxeterGroup,
    h: &sbim_hecke::SingularHeckeElt,
    x: &DoubleCoset,
) -> Result<bool, sbim_coxeter::CoxeterError> {
    if h.coeff(&x.min) != Laurent::one() {
        return Ok(false);
    }
    for (y, _) in h.terms() {
        let yc = g.double_coset(y, h.s1, h.s2)?;
        if !g.coset_leq(&yc, x) {
            return Ok(false);
        }
    }
    Ok(true)
}
