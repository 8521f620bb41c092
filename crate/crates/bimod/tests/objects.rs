//! Regular objects: unit, shifts, sums, Frobenius and Bott–Samelson objects, tensor
//! products, standard subquotients and characters.

mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbim_algebra::{monomials, Field, Laurent, Poly, Q};
use sbim_bimod::{Engine, RegularObject};
use sbim_coxeter::{Element, Subset};
use sbim_hecke::{Hecke, HeckeElt};

fn hilb_series_of_r(nvars: usize, len: usize) -> Vec<usize> {
    (0..len).map(|d| if d % 2 == 0 { monomials(nvars, d / 2).len() } else { 0 }).collect()
}

/// Hecke-side oracle `ch(BS(w)) = Π v^{-1}H̲_s`.
fn bs_oracle(h: &Hecke, w: &[usize]) -> HeckeElt {
    let mut out = HeckeElt::one();
    for &s in w {
        let b = h.longest_kl(Subset::from_indices([s])).unwrap().shift(-1);
        out = h.mul(&out, &b).unwrap();
    }
    out
}

#[test]
fn unit_shift_and_sum() {
    let (sch, e) = setup("A2");
    let u = e.unit();
    assert_eq!(u.weights, vec![Element::identity()]);
    assert_eq!(e.ch(&u).unwrap(), HeckeElt::one());
    let n = sch.nvars();
    let r = hilb_series_of_r(n, 12);
    let shifted = e.shift(&u, 2);
    // M(2)^i = M^{i+2}: the generator sits in degree −2.
    assert_eq!(e.hilbert(&shifted, -2, 9), r);
    let s = e.dsum(&u, &shifted);
    let sum: Vec<usize> = (0..10).map(|d| u.dim(d) + shifted.dim(d)).collect();
    assert_eq!(e.hilbert(&s, 0, 9), sum);
    let h = Hecke::new(&sch.group);
    assert_eq!(e.ch(&shifted).unwrap(), HeckeElt::one().shift(2));
    assert_eq!(e.ch(&s).unwrap(), h.parse("(1 + v^2) H1").unwrap());
}

#[test]
fn frobenius_objects() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let s = sub(&sch, "s");
    let b = e.frobenius_object(s).unwrap();
    assert_eq!(b.rank(), 2);
    assert_eq!(e.ch(&b).unwrap(), h.parse("H1 + (v^-1) Hs").unwrap());
    assert_eq!(e.ch(&b).unwrap(), h.longest_kl(s).unwrap().shift(-1));
    let empty = e.frobenius_object(Subset::empty()).unwrap();
    assert_eq!(empty.rank(), 1);
    assert_eq!(e.ch(&empty).unwrap(), HeckeElt::one());
    let full = Subset::full(2);
    let b = e.frobenius_object(full).unwrap();
    assert_eq!(b.rank(), 6);
    for (x, g) in e.std_grks(&b).unwrap() {
        assert_eq!(g, Laurent::v_pow(-2 * x.length() as i32), "stalk at {}", sch.group.name(&x));
    }
    assert_eq!(e.ch(&b).unwrap(), h.longest_kl(full).unwrap().shift(-3));
}

#[test]
fn bott_samelson_objects() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let unit = e.bs(&[]).unwrap();
    assert_eq!(unit.rank(), 1);
    assert_eq!(e.ch(&unit).unwrap(), HeckeElt::one());
    let bs = e.bs(&[0]).unwrap();
    assert_eq!(bs.rank(), 2);
    let supp: Vec<String> = bs.weight_multiplicities().keys().map(|w| sch.group.name(w)).collect();
    assert_eq!(supp, vec!["1", "s"]);
    let bst = e.bs(&[0, 1]).unwrap();
    assert_eq!(bst.rank(), 4);
    let expect = h.mul(&h.parse("uHs").unwrap(), &h.parse("uHt").unwrap()).unwrap().shift(-2);
    assert_eq!(e.ch(&bst).unwrap(), expect);
}

#[test]
fn tensor_examples() {
    let (sch, e) = setup("A2");
    let u = e.unit();
    let m = e.bs(&[0, 1]).unwrap();
    let um = e.tensor(&u, &m).unwrap();
    assert_eq!(e.hilbert(&um, -2, 10), e.hilbert(&m, -2, 10));
    assert_eq!(e.ch(&um).unwrap(), e.ch(&m).unwrap());
    let st = e.tensor(&e.bs(&[0]).unwrap(), &e.bs(&[1]).unwrap()).unwrap();
    assert_eq!(st.degrees, m.degrees);
    assert_eq!(st.weights, m.weights);
    assert_eq!(st.coords, m.coords);
    let _ = sch;
}

#[test]
fn character_is_multiplicative_on_bott_samelson_pairs() {
    for preset in ["A2", "B2"] {
        let (sch, e) = setup(preset);
        let h = Hecke::new(&sch.group);
        for w1 in words(2, 3) {
            for w2 in words(2, 3) {
                let m = e.bs(&w1).unwrap();
                let n = e.bs(&w2).unwrap();
                let lhs = e.ch(&e.tensor(&m, &n).unwrap()).unwrap();
                let rhs = h.mul(&e.ch(&m).unwrap(), &e.ch(&n).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "{preset} {w1:?} ⊗ {w2:?}");
                let mut w = w1.clone();
                w.extend(&w2);
                assert_eq!(lhs, bs_oracle(&h, &w), "{preset} {w:?}");
            }
        }
    }
}

#[test]
fn standard_graded_ranks() {
    let (sch, e) = setup("A2");
    let s = sch.group.gen(0);
    assert_eq!(e.std_grk(&e.unit(), &Element::identity()).unwrap(), Laurent::one());
    assert_eq!(e.std_grk(&e.bs(&[0]).unwrap(), &s).unwrap(), l("v^-2"));
    assert_eq!(e.std_grk(&e.unit(), &s).unwrap(), Laurent::zero());
}

fn random_quadratic(n: usize, rng: &mut ChaCha8Rng) -> Poly<Q> {
    let mut f = Poly::zero(n);
    for mu in &monomials(n, 1).monos {
        f.add_term(*mu, Q::from_i64(rng.gen_range(-5..=5)));
    }
    f
}

fn mat_mul(a: &[Vec<Poly<Q>>], b: &[Vec<Poly<Q>>], n: usize) -> Vec<Vec<Poly<Q>>> {
    let r = a.len();
    (0..r)
        .map(|i| {
            (0..r)
                .map(|k| (0..r).fold(Poly::zero(n), |acc, j| &acc + &(&a[i][j] * &b[j][k])))
                .collect()
        })
        .collect()
}

/// Right multiplication by `f` stays in the lattice, is multiplicative, and is left
/// multiplication by `x(f)` on the weight space of `x`.
fn check_weight_spaces(e: &Engine<Q>, m: &RegularObject<Q>, rng: &mut ChaCha8Rng) {
    let n = m.nvars;
    let fs: Vec<Poly<Q>> = (0..5).map(|_| random_quadratic(n, rng)).collect();
    let mats: Vec<_> = fs.iter().map(|f| e.right_matrix(m, f).unwrap()).collect();
    for (f, a) in fs.iter().zip(&mats) {
        // A(f)·C = C·diag(w_k(f))
        let ac = mat_mul(a, &m.coords, n);
        for i in 0..m.rank() {
            for k in 0..m.rank() {
                let rhs = &m.coords[i][k] * &e.act(&m.weights[k], f);
                assert_eq!(ac[i][k], rhs);
            }
        }
    }
    let fg = &fs[0] * &fs[1];
    assert_eq!(e.right_matrix(m, &fg).unwrap(), mat_mul(&mats[0], &mats[1], n));
    assert_eq!(mat_mul(&mats[0], &mats[1], n), mat_mul(&mats[1], &mats[0], n));
}

#[test]
fn weight_space_characterization() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e_e6e1);
    for preset in ["A2", "B2"] {
        let (_, e) = setup(preset);
        for w in words(2, 3) {
            check_weight_spaces(&e, &e.bs(&w).unwrap(), &mut rng);
        }
        check_weight_spaces(&e, &e.frobenius_object(Subset::full(2)).unwrap(), &mut rng);
        check_weight_spaces(&e, &e.dual(&e.bs(&[0, 1]).unwrap()).unwrap(), &mut rng);
    }
}

/// `M_{I₁}/M_{I₂}` depends only on `I₁ ∖ I₂`: compare `{≥x} ∖ {>x}` with the same pair
/// enlarged by an upward-closed set avoiding `x`.
#[test]
fn subquotients_are_independent_of_the_open_pair() {
    let (sch, e) = setup("A2");
    let g = &sch.group;
    let m = e.bs(&[0, 1, 0]).unwrap();
    let ws: Vec<Element> = m.weight_multiplicities().into_keys().collect();
    for x in &ws {
        for y in &ws {
            if g.bruhat_leq(y, x) {
                continue;
            }
            // J = {≥y} avoids x.
            let ge_x = |w: &Element| g.bruhat_leq(x, w);
            let gt_x = |w: &Element| g.bruhat_leq(x, w) && w != x;
            let j = |w: &Element| g.bruhat_leq(y, w);
            for d in -3..=8 {
                let a = e.truncation_dim(&m, d, ge_x) - e.truncation_dim(&m, d, gt_x);
                let b = e.truncation_dim(&m, d, |w| ge_x(w) || j(w)) - e.truncation_dim(&m, d, |w| gt_x(w) || j(w));
                assert_eq!(a, b, "x={} y={} d={d}", g.name(x), g.name(y));
            }
        }
    }
}
