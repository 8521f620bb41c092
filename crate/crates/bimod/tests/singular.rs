//! Singular objects: push-forward, pull-back, convolution and duality, against Hecke-side
//! oracles.

mod common;

use common::*;
use sbim_algebra::{monomials, Laurent};
use sbim_bimod::Engine;
use sbim_coxeter::Subset;
use sbim_hecke::{Hecke, SingularHeckeElt};

fn all_subsets(rank: usize) -> Vec<Subset> {
    Subset::all(rank)
}

#[test]
fn push_of_unit_has_the_lemma_character() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let v = e.induced(&e.unit(), s, t).unwrap();
    let expect = SingularHeckeElt::basis(s, t, sbim_coxeter::Element::identity()).scale(&l("v^-1"));
    assert_eq!(e.sing_ch(&v).unwrap(), expect);
    for s1 in all_subsets(2) {
        for s2 in all_subsets(2) {
            let v = e.induced(&e.unit(), s1, s2).unwrap();
            let k = -(e.longest_length(s2).unwrap() as i32) + e.longest_length(s1.intersection(&s2)).unwrap() as i32;
            // `π_*R` is free over the standard object at the identity of graded rank `A_1`.
            let a1 = e.group().parabolic(s1.intersection(&s2)).unwrap().elements.iter()
                .fold(Laurent::zero(), |acc, w| &acc + &Laurent::v_pow(-2 * w.length() as i32));
            let expect = SingularHeckeElt::basis(s1, s2, sbim_coxeter::Element::identity())
                .scale(&(&a1 * &Laurent::v_pow(k)));
            assert_eq!(e.sing_ch(&v).unwrap(), expect, "{:?} {:?}", s1, s2);
        }
    }
}

#[test]
fn push_forward_avatar_and_support() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let avatar = e
        .tensor(&*e.tensor(&e.frobenius_object(s).unwrap(), &e.unit()).unwrap(), &e.frobenius_object(t).unwrap())
        .unwrap();
    assert_eq!(avatar.rank(), 4);
    let c1 = coset(&sch, "1", s, t);
    assert!(avatar.weights.iter().all(|w| c1.contains(w)));
    let v = e.induced(&e.bs(&[1, 0]).unwrap(), s, t).unwrap();
    let supp: Vec<String> = e.sing_support(&v).unwrap().iter().map(|x| sch.group.name(&x.min)).collect();
    assert_eq!(supp, vec!["1", "ts"]);
}

#[test]
fn character_of_push_forward_matches_the_hecke_formula() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    for w in words(2, 2) {
        let m = e.bs(&w).unwrap();
        let ch = e.ch(&m).unwrap();
        for s1 in all_subsets(2) {
            for s2 in all_subsets(2) {
                let v = e.induced(&m, s1, s2).unwrap();
                assert_eq!(e.sing_ch(&v).unwrap(), h.push_char(&ch, s1, s2).unwrap(), "{w:?}");
            }
        }
    }
}

#[test]
fn push_forward_in_two_steps() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let m = e.bs(&[0]).unwrap();
    let one = e.induced(&m, s, t).unwrap();
    let mid = e.induced(&m, s, Subset::empty()).unwrap();
    let two = e.push(&mid, s, t).unwrap();
    assert_eq!(e.sing_ch(&one).unwrap(), e.sing_ch(&two).unwrap());
    assert_eq!(e.sing_hilbert(&one, -2, 10).unwrap(), e.sing_hilbert(&two, -2, 10).unwrap());
    // Pushing the summands of a decomposition adds up to pushing the whole object.
    let v = e.induced(&e.bs(&[0, 0]).unwrap(), Subset::empty(), Subset::empty()).unwrap();
    let dec = e.decompose(&v).unwrap();
    let mut total = SingularHeckeElt::zero(s, t);
    for sm in &dec.summands {
        total = total.add(&e.sing_ch(&e.push(&sm.object, s, t).unwrap()).unwrap());
    }
    assert_eq!(total, e.sing_ch(&e.push(&v, s, t).unwrap()).unwrap());
}

/// `Hilb(π^*π_*M) = Σ_{w₁ ∈ W_{S₁}, w₂ ∈ W_{S₂}} t^{2ℓ(w₁)+2ℓ(w₂)} Hilb(M)`.
fn pull_push_expected(e: &Engine<sbim_algebra::Q>, m: &sbim_bimod::RegularObject<sbim_algebra::Q>, s1: Subset, s2: Subset, lo: i32, hi: i32) -> Vec<usize> {
    let g = e.group();
    let p1 = g.parabolic(s1).unwrap();
    let p2 = g.parabolic(s2).unwrap();
    (lo..=hi)
        .map(|d| {
            let mut acc = 0;
            for w1 in &p1.elements {
                for w2 in &p2.elements {
                    acc += m.dim(d - 2 * (w1.length() + w2.length()) as i32);
                }
            }
            acc
        })
        .collect()
}

#[test]
fn pull_back_of_push_forward() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    for m in [e.unit(), e.bs(&[0]).unwrap()] {
        let v = e.induced(&m, s, t).unwrap();
        let p = e.pull(&v, Subset::empty(), Subset::empty()).unwrap();
        assert_eq!(e.sing_hilbert(&p, -4, 12).unwrap(), pull_push_expected(&e, &m, s, t, -4, 12));
    }
    let u = e.unit();
    let n = sch.nvars();
    let v = e.induced(&u, s, t).unwrap();
    let p = e.pull(&v, Subset::empty(), Subset::empty()).unwrap();
    let r: Vec<usize> = (0..9).map(|d| if d % 2 == 0 { monomials(n, d / 2).len() } else { 0 }).collect();
    let expect: Vec<usize> = (0..9).map(|d| r[d] + 2 * if d >= 2 { r[d - 2] } else { 0 } + if d >= 4 { r[d - 4] } else { 0 }).collect();
    assert_eq!(e.sing_hilbert(&p, 0, 8).unwrap(), expect);
    let supp: Vec<String> = e.sing_support(&p).unwrap().iter().map(|x| sch.group.name(&x.min)).collect();
    assert_eq!(supp, vec!["1", "s", "t", "st"]);
    let same = e.pull(&v, s, t).unwrap();
    assert_eq!(e.sing_ch(&same).unwrap(), e.sing_ch(&v).unwrap());
    assert_eq!(e.sing_hilbert(&same, 0, 8).unwrap(), e.sing_hilbert(&v, 0, 8).unwrap());
}

#[test]
fn unit_object_acts_trivially() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let v = e.induced(&e.bs(&[1]).unwrap(), s, t).unwrap();
    let right = e.convolve(&v, &e.singular_unit(t).unwrap()).unwrap();
    let left = e.convolve(&e.singular_unit(s).unwrap(), &v).unwrap();
    for w in [&left, &right] {
        assert_eq!(e.sing_ch(w).unwrap(), e.sing_ch(&v).unwrap());
        assert_eq!(e.sing_hilbert(w, -2, 10).unwrap(), e.sing_hilbert(&v, -2, 10).unwrap());
    }
}

#[test]
fn convolution_example() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let v1 = e.induced(&e.unit(), s, t).unwrap();
    let v2 = e.induced(&e.unit(), t, s).unwrap();
    let c = e.convolve(&v1, &v2).unwrap();
    let ch = e.sing_ch(&c).unwrap();
    assert_eq!(ch, h.star(&e.sing_ch(&v1).unwrap(), &e.sing_ch(&v2).unwrap()).unwrap());
    let expect = h.parse("uHsts + uHs").unwrap().shift(-2);
    assert_eq!(h.from_singular(&ch).unwrap(), expect);
}

#[test]
fn convolution_is_associative() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let v1 = e.induced(&e.bs(&[1]).unwrap(), s, t).unwrap();
    let v2 = e.induced(&e.bs(&[0]).unwrap(), t, s).unwrap();
    let v3 = e.induced(&e.unit(), s, Subset::empty()).unwrap();
    let a = e.convolve(&e.convolve(&v1, &v2).unwrap(), &v3).unwrap();
    let b = e.convolve(&v1, &e.convolve(&v2, &v3).unwrap()).unwrap();
    assert_eq!(e.sing_ch(&a).unwrap(), e.sing_ch(&b).unwrap());
    assert_eq!(e.sing_hilbert(&a, -4, 10).unwrap(), e.sing_hilbert(&b, -4, 10).unwrap());
}

#[test]
fn convolution_matches_star_product() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let subsets = all_subsets(2);
    let seeds = words(2, 1);
    for &s1 in &subsets {
        for &s2 in &subsets {
            for &s3 in &subsets {
                for w1 in &seeds {
                    for w2 in &seeds {
                        let v1 = e.induced(&e.bs(w1).unwrap(), s1, s2).unwrap();
                        let v2 = e.induced(&e.bs(w2).unwrap(), s2, s3).unwrap();
                        let c = e.convolve(&v1, &v2).unwrap();
                        let rhs = h.star(&e.sing_ch(&v1).unwrap(), &e.sing_ch(&v2).unwrap()).unwrap();
                        assert_eq!(e.sing_ch(&c).unwrap(), rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn middle_mismatch_is_reported() {
    let (sch, e) = setup("A2");
    let (s, t) = (sub(&sch, "s"), sub(&sch, "t"));
    let v = e.induced(&e.unit(), s, t).unwrap();
    let err = e.convolve(&v, &v).unwrap_err();
    assert_eq!(err.code(), "MiddleMismatch");
}

#[test]
fn duality_of_regular_objects() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    let u = e.unit();
    let du = e.dual(&u).unwrap();
    assert_eq!(du.degrees, u.degrees);
    assert_eq!(e.ch(&du).unwrap(), e.ch(&u).unwrap());
    let b = e.bs(&[0]).unwrap();
    let db = e.dual(&b).unwrap();
    let b2 = e.shift(&b, 2);
    assert_eq!(e.ch(&db).unwrap(), e.ch(&b2).unwrap());
    assert_eq!(e.hilbert(&db, -4, 10), e.hilbert(&b2, -4, 10));
    let vd = e.induced(&db, Subset::empty(), Subset::empty()).unwrap();
    let vb = e.induced(&b2, Subset::empty(), Subset::empty()).unwrap();
    assert!(e.isomorphic(&vd, &vb).unwrap());
    for w in words(2, 3) {
        let m = e.bs(&w).unwrap();
        let d = e.dual(&m).unwrap();
        assert_eq!(e.ch(&d).unwrap(), h.bar(&e.ch(&m).unwrap()).unwrap(), "{w:?}");
        let dd = e.dual(&d).unwrap();
        assert_eq!(e.ch(&dd).unwrap(), e.ch(&m).unwrap());
        assert_eq!(e.hilbert(&dd, -6, 10), e.hilbert(&m, -6, 10));
    }
}

#[test]
fn duality_of_singular_objects() {
    let (sch, e) = setup("A2");
    let h = Hecke::new(&sch.group);
    for s1 in all_subsets(2) {
        for s2 in all_subsets(2) {
            for w in words(2, 2) {
                let v = e.induced(&e.bs(&w).unwrap(), s1, s2).unwrap();
                let dv = e.sing_dual(&v).unwrap();
                assert_eq!(e.sing_ch(&dv).unwrap(), h.singular_bar(&e.sing_ch(&v).unwrap()).unwrap());
                let ddv = e.sing_dual(&dv).unwrap();
                assert_eq!(e.sing_ch(&ddv).unwrap(), e.sing_ch(&v).unwrap());
                assert_eq!(e.sing_hilbert(&ddv, -6, 8).unwrap(), e.sing_hilbert(&v, -6, 8).unwrap());
            }
        }
    }
}
