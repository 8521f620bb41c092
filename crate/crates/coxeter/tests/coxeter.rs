use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbim_algebra::{Field, Q};
use sbim_coxeter::*;
use sbim_realization::{preset_doc, CoxeterData, Realization};

fn a2() -> CoxeterGroup {
    CoxeterGroup::new(CoxeterData::dihedral(Some(3))).unwrap()
}

fn el(g: &CoxeterGroup, s: &str) -> Element {
    g.parse_element(s).unwrap()
}

#[test]
fn involutions_and_braids() {
    let g = a2();
    assert!(g.mul(&el(&g, "s"), &el(&g, "s")).unwrap().is_identity());
    assert_eq!(el(&g, "sts"), el(&g, "tst"));
    assert_eq!(el(&g, "sts").length(), 3);
    assert_eq!(g.name(&el(&g, "tst")), "sts");
}

#[test]
fn bruhat_examples() {
    let g = a2();
    for w in g.all_elements().unwrap() {
        assert!(g.bruhat_leq(&Element::identity(), w));
    }
    assert!(g.bruhat_leq(&el(&g, "s"), &el(&g, "st")));
    assert!(!g.bruhat_leq(&el(&g, "st"), &el(&g, "ts")));
    assert!(g.bruhat_leq(&el(&g, "ts"), &el(&g, "sts")));
}

/// Subword criterion on the canonical word, as an independent oracle.
fn subword_leq(g: &CoxeterGroup, a: &Element, b: &Element) -> bool {
    let w = b.word();
    (0u32..(1 << w.len())).any(|mask| {
        let sub: Vec<u8> = (0..w.len()).filter(|i| mask & (1 << i) != 0).map(|i| w[i]).collect();
        g.normalize(&sub) == *a
    })
}

#[test]
fn bruhat_matches_subword_property() {
    for m in [3, 4, 6] {
        let g = CoxeterGroup::new(CoxeterData::dihedral(Some(m))).unwrap();
        let all = g.all_elements().unwrap().to_vec();
        for a in &all {
            for b in &all {
                assert_eq!(g.bruhat_leq(a, b), subword_leq(&g, a, b), "{a:?} {b:?}");
            }
        }
    }
    let g = CoxeterGroup::new(CoxeterData::type_a(&["s", "t", "u"])).unwrap();
    let all = g.all_elements().unwrap().to_vec();
    assert_eq!(all.len(), 24);
    for a in &all {
        for b in &all {
            assert_eq!(g.bruhat_leq(a, b), subword_leq(&g, a, b));
        }
    }
}

#[test]
fn random_length_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for data in [CoxeterData::dihedral(Some(3)), CoxeterData::dihedral(Some(4)), CoxeterData::dihedral(None)] {
        let g = CoxeterGroup::with_length_bound(data, 14).unwrap();
        for _ in 0..200 {
            let wa: Vec<u8> = (0..rng.gen_range(0..=6)).map(|_| rng.gen_range(0..2)).collect();
            let wb: Vec<u8> = (0..rng.gen_range(0..=6)).map(|_| rng.gen_range(0..2)).collect();
            let a = g.from_word(&wa).unwrap();
            let b = g.from_word(&wb).unwrap();
            let ab = g.mul(&a, &b).unwrap();
            assert!(ab.length() <= a.length() + b.length());
            assert_eq!(ab.length() % 2, (a.length() + b.length()) % 2);
            assert_eq!(g.mul(&ab, &g.inv(&b)).unwrap(), a);
        }
    }
}

#[test]
fn a2_double_cosets() {
    let g = a2();
    let (s, t) = (Subset::from_indices([0]), Subset::from_indices([1]));
    let cs = g.double_cosets(s, t).unwrap();
    assert_eq!(cs.len(), 2);
    assert_eq!((g.name(&cs[0].min), g.name(&cs[0].max)), ("1".into(), "st".into()));
    assert_eq!((g.name(&cs[1].min), g.name(&cs[1].max)), ("ts".into(), "sts".into()));
    assert_eq!(cs[0].members.len(), 4);
    assert_eq!(cs[1].members.len(), 2);
    let singles = g.double_cosets(Subset::empty(), Subset::empty()).unwrap();
    assert_eq!(singles.len(), 6);
    assert!(singles.iter().all(|c| c.min == c.max));
}

#[test]
fn coset_length_and_size_identities() {
    for m in [3, 4, 6] {
        let g = CoxeterGroup::new(CoxeterData::dihedral(Some(m))).unwrap();
        for s1 in Subset::all(2) {
            for s2 in Subset::all(2) {
                let p1 = g.parabolic(s1).unwrap();
                let p2 = g.parabolic(s2).unwrap();
                let cs = g.double_cosets(s1, s2).unwrap();
                let total: usize = cs.iter().map(|c| c.members.len()).sum();
                assert_eq!(total, g.all_elements().unwrap().len());
                for c in &cs {
                    let stab = g.coset_stabilizer(c).unwrap();
                    assert_eq!(c.members.len() * stab.len(), p1.order() * p2.order());
                    // the stabilizer is a standard parabolic W_I; its longest element has
                    // length ℓ(w_I)
                    let li = stab.iter().map(|e| e.length()).max().unwrap();
                    assert_eq!(c.max.length() - c.min.length(), p1.longest_length() + p2.longest_length() - li);
                }
            }
        }
    }
}

#[test]
fn coset_products() {
    let g = a2();
    let (e, s, t) = (Subset::empty(), Subset::from_indices([0]), Subset::from_indices([1]));
    let x = g.double_coset(&Element::identity(), s, e).unwrap();
    let y = g.double_coset(&Element::identity(), e, t).unwrap();
    let z = g.coset_product(&x, &y).unwrap();
    assert_eq!(z.len(), 1);
    assert_eq!(g.name(&z[0].max), "st");

    let x = g.double_coset(&el(&g, "ts"), s, t).unwrap();
    let y = g.double_coset(&el(&g, "st"), t, s).unwrap();
    let z = g.coset_product(&x, &y).unwrap();
    // {ts, sts}·{st, sts} = {1, s}: a single (s,s)-coset as a set product.
    assert_eq!(z.len(), 1);
    assert_eq!(g.name(&z[0].max), "s");
    // union of the product cosets covers the brute-force product set
    let prod = g.product_set(&x, &y).unwrap();
    for w in &prod {
        assert!(z.iter().any(|c| c.contains(w)));
    }

    let a1 = CoxeterGroup::new(CoxeterData::type_a(&["s"])).unwrap();
    let w = a1.double_coset(&Element::identity(), s, s).unwrap();
    assert_eq!(a1.coset_product(&w, &w).unwrap(), vec![w]);
}

#[test]
fn openness() {
    let g = a2();
    let (s, t) = (Subset::from_indices([0]), Subset::from_indices([1]));
    let cs = g.double_cosets(s, t).unwrap();
    assert!(g.is_open(&cs[1..], &cs));
    assert!(!g.is_open(&cs[..1], &cs));
    assert!(g.is_closed(&cs[..1], &cs));
}

#[test]
fn a2_reflection_roots() {
    let r: Realization<Q> = preset_doc("A2-GL3").unwrap().build().unwrap();
    let g = CoxeterGroup::new(r.coxeter.clone()).unwrap();
    let refl = g.reflections(None);
    let names: Vec<String> = refl.iter().map(|x| g.name(&x.element)).collect();
    assert_eq!(names, vec!["s", "t", "sts"]);
    let q = |v: &[i64]| v.iter().map(|x| Q::from_i64(*x)).collect::<Vec<_>>();
    assert_eq!(refl[0].root_in(&r), q(&[1, -1, 0]));
    assert_eq!(refl[1].root_in(&r), q(&[0, 1, -1]));
    assert_eq!(refl[2].root_in(&r), q(&[1, 0, -1]));
    let a1 = CoxeterGroup::new(CoxeterData::type_a(&["s"])).unwrap();
    assert_eq!(a1.reflections(None).len(), 1);
    assert!(g.parabolic_reflections(Subset::empty()).unwrap().is_empty());
}

#[test]
fn infinite_parabolic_is_not_finitary() {
    let g = CoxeterGroup::with_length_bound(CoxeterData::dihedral(None), 6).unwrap();
    assert!(g.is_finitary(Subset::from_indices([0])));
    assert!(matches!(g.parabolic(Subset::full(2)), Err(CoxeterError::NotFinitary(_))));
}
