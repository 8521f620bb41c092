use sbim_algebra::{Field, F2, Q};
use sbim_realization::*;

#[test]
fn every_preset_loads_over_q() {
    for p in PRESETS {
        let r = AnyRealization::preset(p, FieldTag::Q).unwrap();
        assert_eq!(r.field(), FieldTag::Q);
    }
}

#[test]
fn a1_adjoint_acts_by_minus_one() {
    let r: Realization<Q> = preset_doc("A1-adjoint").unwrap().build().unwrap();
    assert_eq!(r.action(0), vec![vec![Q::from_i64(-1)]]);
}

#[test]
fn a1_adjoint_loads_over_f2() {
    // The coroot vanishes in characteristic 2, but the realization is still accepted.
    let r: Realization<F2> = preset_doc("A1-adjoint").unwrap().build().unwrap();
    assert!(r.alpha_check[0][0].is_zero());
    assert_eq!(r.action(0), vec![vec![F2::one()]]);
}

#[test]
fn a2_gl3_swaps_coordinates_and_braids() {
    let r: Realization<Q> = preset_doc("A2-GL3").unwrap().build().unwrap();
    let s = r.action(0);
    let e1 = vec![Q::one(), Q::zero(), Q::zero()];
    assert_eq!(Realization::apply(&s, &e1), vec![Q::zero(), Q::one(), Q::zero()]);
    let st = mat_mul(&r.action(0), &r.action(1));
    let cube = mat_mul(&mat_mul(&st, &st), &st);
    assert_eq!(cube, identity::<Q>(3));
}

#[test]
fn reflections_negate_their_roots() {
    for p in PRESETS {
        let r: Realization<Q> = preset_doc(p).unwrap().build().unwrap();
        for s in 0..r.rank() {
            let neg: Vec<Q> = r.alpha[s].iter().map(|x| -x.clone()).collect();
            assert_eq!(r.reflect(s, &r.alpha[s]), neg);
        }
    }
}

#[test]
fn pairing_three_is_rejected() {
    let json = r#"{"generators":["s"],"coxeter_matrix":[[1]],"dim_v":1,
        "alpha":{"s":["1"]},"alpha_check":{"s":["3"]}}"#;
    assert!(matches!(load_realization(json), Err(RealizationError::PairingNotTwo { .. })));
}

#[test]
fn braid_failure_and_zero_root_are_reported() {
    let json = r#"{"generators":["s","t"],"coxeter_matrix":[[1,3],[3,1]],"dim_v":2,
        "alpha":{"s":["1","0"],"t":["0","1"]},"alpha_check":{"s":["2","0"],"t":["0","2"]}}"#;
    assert!(matches!(load_realization(json), Err(RealizationError::BraidFailure { m: 3, .. })));
    let json = r#"{"generators":["s"],"coxeter_matrix":[[1]],"dim_v":1,
        "alpha":{"s":["0"]},"alpha_check":{"s":["2"]}}"#;
    assert!(matches!(load_realization(json), Err(RealizationError::ZeroRoot(_))));
    assert!(matches!(load_realization("{"), Err(RealizationError::Schema(_))));
}

#[test]
fn serialization_round_trips() {
    for p in PRESETS {
        let r = AnyRealization::preset(p, FieldTag::Q).unwrap();
        let json = serde_json::to_string(&r.to_doc()).unwrap();
        let back = load_realization(&json).unwrap();
        assert_eq!(back.to_doc(), r.to_doc());
    }
    let doc = preset_doc("B2").unwrap();
    let r = AnyRealization::from_doc_with_field(&doc, FieldTag::Fp(5)).unwrap();
    let back = load_realization(&serde_json::to_string(&r.to_doc()).unwrap()).unwrap();
    assert_eq!(back.field(), FieldTag::Fp(5));
}

#[test]
fn unsupported_prime_is_an_error() {
    let doc = preset_doc("A2").unwrap();
    assert!(matches!(
        AnyRealization::from_doc_with_field(&doc, FieldTag::Fp(17)),
        Err(RealizationError::UnsupportedField(17))
    ));
}

#[test]
fn g2_braid_and_infinite_entries() {
    preset_doc("G2").unwrap().build::<Q>().unwrap();
    let json = r#"{"generators":["s","t"],"coxeter_matrix":[[1,"inf"],[ "inf",1]],"dim_v":2,
        "alpha":{"s":["1","0"],"t":["0","1"]},"alpha_check":{"s":["2","-2"],"t":["-2","2"]}}"#;
    let r = load_realization(json).unwrap();
    assert_eq!(r.coxeter().m(0, 1), None);
}
