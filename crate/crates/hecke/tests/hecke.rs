use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sbim_algebra::Laurent;
use sbim_coxeter::{CoxeterGroup, Element, Subset};
use sbim_hecke::*;
use sbim_realization::CoxeterData;

fn dihedral(m: u32) -> CoxeterGroup {
    CoxeterGroup::new(CoxeterData::dihedral(Some(m))).unwrap()
}

fn a1() -> CoxeterGroup {
    CoxeterGroup::new(CoxeterData::type_a(&["s"])).unwrap()
}

fn l(s: &str) -> Laurent {
    Laurent::parse(s).unwrap()
}

fn sub(g: &CoxeterGroup, s: &str) -> Subset {
    g.parse_subset(s).unwrap()
}

fn el(g: &CoxeterGroup, s: &str) -> Element {
    g.parse_element(s).unwrap()
}

fn random_elt(h: &Hecke, rng: &mut ChaCha8Rng) -> HeckeElt {
    let all = h.group.all_elements().unwrap().to_vec();
    let mut x = HeckeElt::zero();
    for _ in 0..3 {
        let w = all[rng.gen_range(0..all.len())].clone();
        let c = Laurent::monomial(rng.gen_range(-2..=2), rng.gen_range(-3..=3));
        x.add_term(w, &c);
    }
    x
}

#[test]
fn quadratic_relation_and_lengths() {
    let g = dihedral(3);
    let h = Hecke::new(&g);
    let hs = h.parse("Hs").unwrap();
    let sq = h.mul(&hs, &hs).unwrap();
    assert_eq!(sq, h.parse("H1 + (v^-1 - v) Hs").unwrap());
    assert_eq!(h.mul(&hs, &h.parse("Ht").unwrap()).unwrap(), h.parse("Hst").unwrap());
    // (H_s − v^{-1})(H_s + v) = 0
    let a = h.parse("Hs - v^-1").unwrap();
    let b = h.parse("Hs + v").unwrap();
    assert!(h.mul(&a, &b).unwrap().is_zero());
}

#[test]
fn kl_generator_square() {
    let g = dihedral(3);
    let h = Hecke::new(&g);
    let us = h.parse("uHs").unwrap();
    assert_eq!(us, h.parse("Hs + v").unwrap());
    assert_eq!(h.mul(&us, &us).unwrap(), us.scale(&l("v + v^-1")));
}

#[test]
fn longest_kl_examples() {
    let g = dihedral(3);
    let h = Hecke::new(&g);
    assert_eq!(h.longest_kl(sub(&g, "s")).unwrap(), h.parse("Hs + v").unwrap());
    assert_eq!(h.longest_kl(Subset::empty()).unwrap(), HeckeElt::one());
    assert_eq!(
        h.longest_kl(sub(&g, "st")).unwrap(),
        h.parse("Hsts + v Hst + v Hts + v^2 Hs + v^2 Ht + v^3").unwrap()
    );
    assert_eq!(h.parse("uH{st}").unwrap(), h.longest_kl(sub(&g, "st")).unwrap());
}

#[test]
fn bar_and_omega_examples() {
    let g = dihedral(3);
    let h = Hecke::new(&g);
    assert_eq!(h.bar(&HeckeElt::one()).unwrap(), HeckeElt::one());
    assert_eq!(h.bar(&h.parse("Hs").unwrap()).unwrap(), h.parse("Hs + (v - v^-1)").unwrap());
    for i in ["s", "t", "st"] {
        let k = h.longest_kl(sub(&g, i)).unwrap();
        assert_eq!(h.omega(&k).unwrap(), k);
        assert_eq!(h.bar(&k).unwrap(), k);
    }
}

#[test]
fn axioms_on_words_and_random_pairs() {
    for g in [a1(), dihedral(3), dihedral(4)] {
        let h = Hecke::new(&g);
        // Braid relation for the generators.
        if g.rank() == 2 {
            let m = g.data().m(0, 1).unwrap() as usize;
            let alt = |first: usize| (0..m).map(|i| h.gen((first + i) % 2)).collect::<Vec<_>>();
            assert_eq!(h.mul_all(&alt(0)).unwrap(), h.mul_all(&alt(1)).unwrap());
        }
        // Quadratic relation and involutions on every basis element up to length 4.
        for w in g.elements_up_to(4) {
            let hw = HeckeElt::basis(w.clone());
            for s in 0..g.rank() {
                let lhs = h.lmul_gen(s, &h.lmul_gen(s, &hw).unwrap()).unwrap();
                let rhs = hw.add(&h.lmul_gen(s, &hw).unwrap().scale(&l("v^-1 - v")));
                assert_eq!(lhs, rhs);
            }
            assert_eq!(h.bar(&h.bar(&hw).unwrap()).unwrap(), hw);
            assert_eq!(h.omega(&h.omega(&hw).unwrap()).unwrap(), hw);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..20 {
            let a = random_elt(&h, &mut rng);
            let b = random_elt(&h, &mut rng);
            let ab = h.mul(&a, &b).unwrap();
            let ba = h.mul(&b, &a).unwrap();
            assert_eq!(h.bar(&ab).unwrap(), h.mul(&h.bar(&a).unwrap(), &h.bar(&b).unwrap()).unwrap());
            assert_eq!(h.omega(&ab).unwrap(), h.mul(&h.omega(&b).unwrap(), &h.omega(&a).unwrap()).unwrap());
            assert_eq!(h.omega(&h.bar(&a).unwrap()).unwrap(), h.bar(&h.omega(&a).unwrap()).unwrap());
            assert_eq!(ab.eps(), ba.eps());
        }
    }
}

#[test]
fn longest_kl_eigenvector() {
    for g in [dihedral(3), dihedral(4)] {
        let h = Hecke::new(&g);
        for i in Subset::all(g.rank()) {
            let k = h.longest_kl(i).unwrap();
            for w in &g.parabolic(i).unwrap().elements {
                let lhs = h.mul(&k, &HeckeElt::basis(w.clone())).unwrap();
                assert_eq!(lhs, k.shift(-(w.length() as i32)));
            }
        }
    }
}

#[test]
fn to_singular_examples() {
    let g = dihedral(3);
    let h = Hecke::new(&g);
    let (s, t) = (sub(&g, "s"), sub(&g, "t"));
    let x = h.parse("uHs * uHt").unwrap();
    let sx = h.to_singular(&x, s, t).unwrap();
    assert_eq!(sx, SingularHeckeElt::basis(s, t, Element::identity()));
    let w0 = h.parse("uHsts").unwrap();
    let sw = h.to_singular(&w0, s, t).unwrap();
    let mut exp = SingularHeckeElt::basis(s, t, el(&g, "ts"));
    exp.add_term(Element::identity(), &l("v"));
    assert_eq!(sw, exp);
    assert_eq!(h.from_singular(&sw).unwrap(), w0);
    let e = h.to_singular(&h.parse("Hs").unwrap(), s, Subset::empty()).unwrap_err();
    assert_eq!(e.code(), "NotInParabolicModule");
}

#[test]
fn star_examples() {
    let g = a1();
    let h = Hecke::new(&g);
    let s = sub(&g, "s");
    let us = h.to_singular(&h.parse("uHs").unwrap(), s, s).unwrap();
    assert_eq!(h.star(&us, &us).unwrap(), us);
    let zero = SingularHeckeElt::zero(s, s);
    assert!(h.star(&us, &zero).unwrap().is_zero());
    let e = h.star(&us, &SingularHeckeElt::zero(Subset::empty(), s)).unwrap_err();
    assert_eq!(e.code(), "MiddleMismatch");
}

/// All singular basis elements for a pair of subsets.
fn basis(h: &Hecke, s1: Subset, s2: Subset) -> Vec<SingularHeckeElt> {
    h.group.double_cosets(s1, s2).unwrap().into_iter().map(|x| SingularHeckeElt::basis(s1, s2, x.min)).collect()
}

#[test]
fn star_associative_and_unital() {
    for g in [dihedral(3), dihedral(4)] {
        let h = Hecke::new(&g);
        let subsets = Subset::all(2);
        for &a in &subsets {
            for &b in &subsets {
                let unit = SingularHeckeElt::basis(a, a, Element::identity());
                for x in basis(&h, a, b) {
                    assert_eq!(h.star(&unit, &x).unwrap(), x);
                    let unit_b = SingularHeckeElt::basis(b, b, Element::identity());
                    assert_eq!(h.star(&x, &unit_b).unwrap(), x);
                }
            }
        }
        if g.data().m(0, 1) == Some(3) {
            for &a in &subsets {
                for &b in &subsets {
                    for &c in &subsets {
                        for &d in &subsets {
                            for x in basis(&h, a, b) {
                                for y in basis(&h, b, c) {
                                    let xy = h.star(&x, &y).unwrap();
                                    for z in basis(&h, c, d) {
                                        let lhs = h.star(&xy, &z).unwrap();
                                        let rhs = h.star(&x, &h.star(&y, &z).unwrap()).unwrap();
                                        assert_eq!(lhs, rhs);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn singular_bar_unitriangular() {
    for g in [dihedral(3), dihedral(4)] {
        let h = Hecke::new(&g);
        for &a in &Subset::all(2) {
            for &b in &Subset::all(2) {
                for x in g.double_cosets(a, b).unwrap() {
                    let bx = h.singular_bar(&SingularHeckeElt::basis(a, b, x.min.clone())).unwrap();
                    assert_eq!(bx.coeff(&x.min), Laurent::one());
                    assert!(bx.terms().all(|(y, _)| g.bruhat_leq(y, &x.min)));
                }
            }
        }
    }
}

#[test]
fn push_char_examples() {
    let g = dihedral(3);
    let h = Hecke::new(&g);
    let (s, t) = (sub(&g, "s"), sub(&g, "t"));
    let p = h.push_char(&HeckeElt::one(), s, t).unwrap();
    assert_eq!(p, SingularHeckeElt::basis(s, t, Element::identity()).shift(-1));
    assert!(h.push_char(&HeckeElt::zero(), s, t).unwrap().is_zero());
    let p = h.push_char(&h.parse("uHsts").unwrap(), s, t).unwrap();
    let mut exp = SingularHeckeElt::basis(s, t, el(&g, "ts"));
    exp.add_term(Element::identity(), &l("v"));
    let factor = &l("v^-1") * &(&l("v + v^-1") * &l("v + v^-1"));
    assert_eq!(p, exp.scale(&factor));
}

#[test]
fn hom_grk_examples() {
    let g = dihedral(3);
    let h = Hecke::new(&g);
    let e = Subset::empty();
    let one = SingularHeckeElt::basis(e, e, Element::identity());
    assert_eq!(h.hom_grk_formula(&one, &one).unwrap(), Laurent::one());
    let bs = h.to_singular(&h.parse("v^-1 uHs").unwrap(), e, e).unwrap();
    assert_eq!(h.hom_grk_formula(&bs, &bs).unwrap(), l("1 + v^-2"));
    let (s, t) = (sub(&g, "s"), sub(&g, "t"));
    let c1 = SingularHeckeElt::basis(s, t, Element::identity()).shift(-1);
    assert_eq!(h.hom_grk_formula(&c1, &c1).unwrap(), l("1 + v^-2"));
}

#[test]
fn bar_invariant_basis_examples() {
    let g = a1();
    let h = Hecke::new(&g);
    let e = Subset::empty();
    let b: Vec<HeckeElt> =
        h.bar_invariant_basis(e, e).unwrap().iter().map(|x| h.from_singular(x).unwrap()).collect();
    assert_eq!(b, vec![HeckeElt::one(), h.parse("Hs + v").unwrap()]);

    let g = dihedral(3);
    let h = Hecke::new(&g);
    let (s, t) = (sub(&g, "s"), sub(&g, "t"));
    let b = h.bar_invariant_basis(s, t).unwrap();
    let mut c2 = SingularHeckeElt::basis(s, t, el(&g, "ts"));
    c2.add_term(Element::identity(), &l("v"));
    assert_eq!(b, vec![SingularHeckeElt::basis(s, t, Element::identity()), c2]);
}

#[test]
fn bar_invariant_basis_properties() {
    for g in [dihedral(3), dihedral(4)] {
        let h = Hecke::new(&g);
        for &a in &Subset::all(2) {
            for &c in &Subset::all(2) {
                for bx in h.bar_invariant_basis(a, c).unwrap() {
                    assert_eq!(h.singular_bar(&bx).unwrap(), bx);
                    let top = bx.terms().last().unwrap();
                    assert_eq!(*top.1, Laurent::one());
                    for (y, m) in bx.terms() {
                        if y != top.0 {
                            assert!(m.min_exp().unwrap() >= 1);
                            assert!(g.bruhat_leq(y, top.0));
                        }
                    }
                }
            }
        }
    }
}

/// Kazhdan–Lusztig basis by the classical μ-recursion
/// `H̲_s H̲_w = H̲_{sw} + Σ_{z<w, sz<z} μ(z,w) H̲_z`.
fn kl_by_mu(h: &Hecke) -> Vec<(Element, HeckeElt)> {
    let g = h.group;
    let mut kl: Vec<(Element, HeckeElt)> = vec![(Element::identity(), HeckeElt::one())];
    for w in g.all_elements().unwrap().iter().skip(1) {
        let s = w.word()[0] as usize;
        let sw = g.lmul_gen(s, w).unwrap();
        let c_sw = kl.iter().find(|(x, _)| *x == sw).unwrap().1.clone();
        let us = h.gen(s).add(&HeckeElt::term(Element::identity(), Laurent::v_pow(1)));
        let mut c = h.mul(&us, &c_sw).unwrap();
        for (z, cz) in &kl {
            if z.length() < sw.length() && g.is_left_descent(z, s) && g.bruhat_leq(z, &sw) {
                let mu = c_sw.coeff(z).coeff(1);
                c = c.sub(&cz.scale(&Laurent::monomial(0, mu)));
            }
        }
        kl.push((w.clone(), c));
    }
    kl
}

#[test]
fn kl_basis_matches_mu_recursion() {
    for g in [dihedral(3), dihedral(4), dihedral(6)] {
        let h = Hecke::new(&g);
        for (w, c) in kl_by_mu(&h) {
            assert_eq!(h.kl_element(&w).unwrap(), c, "{}", g.name(&w));
        }
    }
    let g = CoxeterGroup::new(CoxeterData::type_a(&["s", "t", "u"])).unwrap();
    let h = Hecke::new(&g);
    for (w, c) in kl_by_mu(&h) {
        assert_eq!(h.kl_element(&w).unwrap(), c, "{}", g.name(&w));
    }
}

#[test]
fn parse_and_json_roundtrip() {
    let g = dihedral(3);
    let h = Hecke::new(&g);
    let x = h.parse("(v^-1 - v) Hs + 2 Hts - 3v^2 * Hsts + H1").unwrap();
    assert_eq!(x.coeff(&el(&g, "s")), l("v^-1 - v"));
    assert_eq!(x.coeff(&el(&g, "ts")), l("2"));
    assert_eq!(x.coeff(&el(&g, "sts")), l("-3v^2"));
    assert_eq!(h.from_json(&h.to_json(&x)).unwrap(), x);
    let y = h.parse(&h.render(&x)).unwrap();
    assert_eq!(y, x);
    let m = h.mul(&h.parse("Hs").unwrap(), &h.parse("Hs").unwrap()).unwrap();
    assert_eq!(h.to_json(&m).to_string(), r#"{"H1":"1","Hs":"v^-1 - v"}"#);
    assert_eq!(h.parse("Hs*(Ht + 1)").unwrap(), h.parse("Hst + Hs").unwrap());
    assert_eq!(h.parse("Hx").unwrap_err().code(), "UnknownGenerator");
    assert_eq!(h.parse("Hs +").unwrap_err().code(), "ParseError");
}

#[test]
fn singular_json_keys() {
    let g = a1();
    let h = Hecke::new(&g);
    let s = sub(&g, "s");
    let us = h.to_singular(&h.parse("uHs").unwrap(), s, s).unwrap();
    let j = h.star(&us, &us).map(|x| h.singular_to_json(&x)).unwrap();
    assert_eq!(j["c:1"], "1");
    assert_eq!(j["s1"], serde_json::json!(["s"]));
}
