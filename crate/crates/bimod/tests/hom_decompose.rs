//! Morphism spaces, the Hom formula, and decomposition into indecomposables.

mod common;

use std::sync::Arc;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbim_algebra::{monomials, Field, Laurent, Poly, Q};
use sbim_bimod::{Decomposition, Engine, Morphism, RegularObject, SingularObject};
use sbim_coxeter::{DoubleCoset, Element, Subset};
use sbim_hecke::{Hecke, SingularHeckeElt};

#[test]
fn endomorphism_ranks() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let empty = Subset::empty();
    let u = e.unit();
    assert_eq!(e.hom_grk(empty, empty, &u, &u, Some(12)).unwrap(), Laurent::one());
    let b = e.bs(&[0]).unwrap();
    assert_eq!(e.hom_grk(empty, empty, &b, &b, Some(12)).unwrap(), l("1 + v^-2"));
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let got = e.hom_grk(s, t, &u, &u, Some(12)).unwrap();
    assert_eq!(got, l("1 + v^-2"));
    let ch = e.sing_ch(&e.induced(&u, s, t).unwrap()).unwrap();
    assert_eq!(h.hom_grk_formula(&ch, &ch).unwrap(), got);
}

#[test]
fn hom_formula_on_induced_pairs() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let pairs = [(Subset::empty(), s), (s, t), (t, Subset::full(2)), (s, s)];
    for (s1, s2) in pairs {
        for w1 in words(2, 1) {
            for w2 in words(2, 2) {
                let (n1, n2) = (e.bs(&w1).unwrap(), e.bs(&w2).unwrap());
                let got = e.hom_grk(s1, s2, &n1, &n2, Some(12)).unwrap();
                let c1 = e.sing_ch(&e.induced(&n1, s1, s2).unwrap()).unwrap();
                let c2 = e.sing_ch(&e.induced(&n2, s1, s2).unwrap()).unwrap();
                assert_eq!(got, h.hom_grk_formula(&c1, &c2).unwrap(), "{s1:?} {s2:?} {w1:?} {w2:?}");
            }
        }
    }
}

fn labels(sch: &sbim_schubert::Schubert<Q>, d: &Decomposition<Q>) -> Vec<(String, i32, usize)> {
    d.multiplicities().into_iter().map(|(x, n, m)| (sch.group.name(&x.min), n, m)).collect()
}

/// `Σ_i v^{n_i} ch(B(x_i))` over the summands, using the characters of the summands.
fn total_character(e: &Engine<Q>, v: &SingularObject<Q>, d: &Decomposition<Q>) -> SingularHeckeElt {
    let chs = e.summand_characters(v, d).unwrap();
    chs.iter().fold(SingularHeckeElt::zero(v.s1, v.s2), |acc, c| acc.add(c))
}

#[test]
fn decomposition_examples() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let empty = Subset::empty();

    let v = e.induced(&e.unit(), s, t).unwrap();
    let d = e.decompose(&v).unwrap();
    assert_eq!(labels(&sch, &d), vec![("1".to_string(), -1, 1)]);

    let v = e.induced(&e.bs(&[0, 0]).unwrap(), empty, empty).unwrap();
    let d = e.decompose(&v).unwrap();
    assert_eq!(labels(&sch, &d), vec![("s".to_string(), -3, 1), ("s".to_string(), -1, 1)]);
    assert_eq!(total_character(&e, &v, &d), e.sing_ch(&v).unwrap());

    let v = e.induced(&e.bs(&[0, 1, 0]).unwrap(), empty, empty).unwrap();
    let d = e.decompose(&v).unwrap();
    assert_eq!(labels(&sch, &d), vec![("s".to_string(), -3, 1), ("sts".to_string(), -3, 1)]);

    // π_*(B(w₀)) to ({s},{t}): (v + 2v^{-1} + v^{-3})·B(c₂).
    let bw0 = e.shift(&e.frobenius_object(Subset::full(2)).unwrap(), 3);
    let v = e.induced(&bw0, s, t).unwrap();
    let d = e.decompose(&v).unwrap();
    assert_eq!(
        labels(&sch, &d),
        vec![("ts".to_string(), -3, 1), ("ts".to_string(), -1, 2), ("ts".to_string(), 1, 1)]
    );
    let c2 = coset(&sch, "ts", s, t);
    let b = h.bar_invariant_element(&c2).unwrap();
    assert_eq!(e.sing_ch(&v).unwrap(), b.scale(&l("v + 2v^-1 + v^-3")));
    assert_eq!(total_character(&e, &v, &d), e.sing_ch(&v).unwrap());
}

/// Normalization of the copies of B(x): `π_*(B(x₋)) ≅ ⊕_{w ∈ W_I} B(x)(−ℓ(w_{S₂}) + ℓ(w_I) − 2ℓ(w)) ⊕ M`
/// with `M` supported below `x`.
#[test]
fn push_forward_of_indecomposable_has_the_predicted_top() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    // B(ts) = BS(t,s)(2); I = {s} for the coset of ts in W_s∖W/W_t.
    let v = e.induced(&e.shift(&e.bs(&[1, 0]).unwrap(), 2), s, t).unwrap();
    let d = e.decompose(&v).unwrap();
    let top: Vec<i32> = d.summands.iter().filter(|x| sch.group.name(&x.coset.min) == "ts").map(|x| x.shift).collect();
    let mut top = top;
    top.sort();
    assert_eq!(top, vec![-2, 0]);
    assert!(d.summands.iter().all(|x| ["1", "ts"].contains(&sch.group.name(&x.coset.min).as_str())));
}

/// Objects used for the structural properties below.
fn sample_objects(sch: &sbim_schubert::Schubert<Q>, e: &Engine<Q>) -> Vec<SingularObject<Q>> {
    let (s, t) = (sub(sch, "s"), sub(sch, "t"));
    let empty = Subset::empty();
    vec![
        e.induced(&e.unit(), s, t).unwrap(),
        e.induced(&e.bs(&[1, 0]).unwrap(), s, t).unwrap(),
        e.induced(&e.bs(&[0, 1]).unwrap(), t, s).unwrap(),
        e.induced(&e.bs(&[0, 1]).unwrap(), s, empty).unwrap(),
        e.induced(&e.bs(&[0, 1, 0]).unwrap(), empty, empty).unwrap(),
        e.induced(&e.bs(&[1, 0, 1]).unwrap(), s, s).unwrap(),
    ]
}

#[test]
fn duality_negates_shifts() {
    let (sch, e) = setup("A2");
    for v in sample_objects(&sch, &e) {
        let d = e.decompose(&v).unwrap();
        let dd = e.decompose(&e.sing_dual(&v).unwrap()).unwrap();
        let mut expect: Vec<(String, i32, usize)> =
            labels(&sch, &d).into_iter().map(|(x, n, m)| (x, -n, m)).collect();
        let mut got = labels(&sch, &dd);
        expect.sort();
        got.sort();
        assert_eq!(got, expect);
    }
}

/// Every summand is `B(x)(n)` with `v^{-n}ch` unitriangular; in these characteristic-0 cases
/// it also agrees with the bar-invariant element of `x`.
#[test]
fn indecomposable_characters_are_unitriangular() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let g = &sch.group;
    for v in sample_objects(&sch, &e) {
        let d = e.decompose(&v).unwrap();
        for (sm, ch) in d.summands.iter().zip(e.summand_characters(&v, &d).unwrap()) {
            let c = ch.shift(-sm.shift);
            assert_eq!(c.coeff(&sm.coset.min), Laurent::one());
            for (y, _) in c.terms() {
                let yc = g.double_coset(y, v.s1, v.s2).unwrap();
                assert!(g.coset_leq(&yc, &sm.coset), "{} not below {}", g.name(y), g.name(&sm.coset.min));
            }
            assert_eq!(c, h.bar_invariant_element(&sm.coset).unwrap());
            assert_eq!(e.sing_ch(&sm.object).unwrap(), ch);
        }
    }
}

#[test]
fn summands_of_equal_label_are_isomorphic() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let v = e.induced(&e.bs(&[1, 0]).unwrap(), s, t).unwrap();
    let d = e.decompose(&v).unwrap();
    let top: Vec<&sbim_bimod::Summand<Q>> = d.summands.iter().filter(|x| sch.group.name(&x.coset.min) == "ts").collect();
    assert_eq!(top.len(), 2);
    let (a, b) = (&top[0].object, &top[1].object);
    let k = top[1].shift - top[0].shift;
    assert!(!e.isomorphic(a, b).unwrap());
    assert!(e.isomorphic(&e.sing_shift(a, k), b).unwrap());
    let bottom = d.summands.iter().find(|x| sch.group.name(&x.coset.min) == "1").unwrap();
    let unit = e.induced(&e.unit(), s, t).unwrap();
    assert!(e.isomorphic(&e.sing_shift(&unit, bottom.shift + 1), &bottom.object).unwrap());
    assert!(!e.isomorphic(&unit, a).unwrap());
}

/// The pull-back of `B(x)` to `(∅,∅)` is `B(x₊)(−ℓ(w_{S₁}))`.
#[test]
fn pull_back_of_indecomposables() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let empty = Subset::empty();
    for v in sample_objects(&sch, &e).into_iter().take(3) {
        let l1 = e.longest_length(v.s1).unwrap() as i32;
        let d = e.decompose(&v).unwrap();
        for sm in &d.summands {
            let b = e.sing_shift(&sm.object, -sm.shift);
            let p = e.pull(&b, empty, empty).unwrap();
            let ch = h.from_singular(&e.sing_ch(&p).unwrap()).unwrap();
            assert_eq!(ch, h.kl_element(&sm.coset.max).unwrap().shift(-l1));
            let dp = e.decompose(&p).unwrap();
            assert_eq!(dp.summands.len(), 1);
            assert_eq!(dp.summands[0].coset.min, sm.coset.max);
            assert_eq!(dp.summands[0].shift, -l1);
        }
    }
}

fn random_poly(n: usize, deg: usize, rng: &mut ChaCha8Rng) -> Poly<Q> {
    let mut f = Poly::zero(n);
    for mu in &monomials(n, deg).monos {
        f.add_term(*mu, Q::from_i64(rng.gen_range(-3..=3)));
    }
    f
}

/// A random homogeneous element of degree `d`, as left coordinates.
fn random_element(m: &RegularObject<Q>, d: i32, rng: &mut ChaCha8Rng) -> Vec<Poly<Q>> {
    m.degrees
        .iter()
        .map(|&di| if d >= di && (d - di) % 2 == 0 { random_poly(m.nvars, ((d - di) / 2) as usize, rng) } else { Poly::zero(m.nvars) })
        .collect()
}

/// Project a random element onto the weight space of `w` by `Π_{y ≠ w} (x ↦ x·f − y(f)x)`.
fn weight_vector(e: &Engine<Q>, m: &RegularObject<Q>, mut d: i32, mut x: Vec<Poly<Q>>, w: &Element, f: &Poly<Q>) -> (i32, Vec<Poly<Q>>) {
    let others: Vec<Element> = m.weight_multiplicities().into_keys().filter(|y| y != w).collect();
    for y in others {
        let xf = e.right_mul(m, d, &x, f).unwrap();
        let yf = e.act(&y, f);
        x = xf.iter().zip(&x).map(|(a, b)| a - &(&yf * b)).collect();
        d += 2;
    }
    (d, x)
}

/// Morphisms are bimodule maps and hence preserve weight spaces; checked on random morphisms.
#[test]
fn random_morphisms_preserve_weights() {
    let (sch, e) = setup("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b1e_c7);
    let empty = Subset::empty();
    let n = sch.nvars();
    let pairs = [(vec![0, 1], vec![0, 1]), (vec![0], vec![0, 1, 0]), (vec![1, 0, 1], vec![0, 1, 0])];
    for (w1, w2) in pairs {
        let (n1, n2) = (e.bs(&w1).unwrap(), e.bs(&w2).unwrap());
        for k in [0, 1, 2] {
            let hs = e.hom_space(empty, empty, &n1, &n2, k).unwrap();
            if hs.basis.is_empty() {
                continue;
            }
            let coeffs: Vec<Q> = (0..hs.basis.len()).map(|_| Q::from_i64(rng.gen_range(-4..=4))).collect();
            let phi = Morphism::combination(&hs.basis, &coeffs);
            let f = random_poly(n, 1, &mut rng);
            for w in n1.weight_multiplicities().keys() {
                let d0 = n1.max_degree();
                let x = random_element(&n1, d0, &mut rng);
                let (d, z) = weight_vector(&e, &n1, d0, x, w, &f);
                let cz = n1.coords_of(&z);
                assert!(cz.iter().zip(&n1.weights).all(|(c, y)| c.is_zero() || y == w));
                // Right linearity, then weight preservation of the image.
                let g = random_poly(n, 1, &mut rng);
                let lhs = e.apply(&phi, &e.right_mul(&n1, d, &z, &g).unwrap()).unwrap();
                let rhs = e.right_mul(&n2, d + phi.degree, &e.apply(&phi, &z).unwrap(), &g).unwrap();
                assert_eq!(lhs, rhs);
                let img = n2.coords_of(&e.apply(&phi, &z).unwrap());
                assert!(img.iter().zip(&n2.weights).all(|(c, y)| c.is_zero() || y == w));
            }
        }
    }
}

/// `Hom(N, M) = Hom(N, M_I)` for `N` supported in an open `I`: every morphism out of the
/// twisted object `R_s ⊗ BS(t)` (support `{s, st}`) lands in `M_{≥s}`.
#[test]
fn morphisms_from_objects_supported_in_an_open_set_factor_through_the_truncation() {
    let (sch, e) = setup("A2");
    let g = &sch.group;
    let n = sch.nvars();
    let s = g.gen(0);
    let rs = Arc::new(RegularObject::new(n, vec![0], vec![s.clone()], vec![0], vec![vec![Poly::one(n)]]));
    let src = e.tensor(&rs, &e.bs(&[1]).unwrap()).unwrap();
    assert!(src.weights.iter().all(|w| g.bruhat_leq(&s, w)));
    let empty = Subset::empty();
    let mut nonzero = 0;
    for target in [e.bs(&[0, 1]).unwrap(), e.bs(&[0, 1, 0]).unwrap()] {
        for k in -2..=6 {
            let hs = e.hom_space(empty, empty, &src, &target, k).unwrap();
            for phi in &hs.basis {
                for img in &phi.images {
                    let c = target.coords_of(img);
                    assert!(c.iter().zip(&target.weights).all(|(c, y)| c.is_zero() || g.bruhat_leq(&s, y)));
                }
            }
            nonzero += hs.basis.len();
        }
    }
    assert!(nonzero > 0);
}

#[test]
fn multiplicities_group_equal_labels() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let v = e.induced(&e.bs(&[0, 1]).unwrap(), s, t).unwrap();
    let d = e.decompose(&v).unwrap();
    assert_eq!(labels(&sch, &d), vec![("1".to_string(), -5, 1), ("1".to_string(), -3, 2), ("1".to_string(), -1, 1)]);
    let c: DoubleCoset = coset(&sch, "1", s, t);
    assert!(d.summands.iter().all(|x| x.coset == c));
}
