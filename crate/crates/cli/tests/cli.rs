use serde_json::{json, Value};

fn run(args: &[&str]) -> sbim_cli::Outcome {
    sbim_cli::run(std::iter::once("sbim").chain(args.iter().copied()))
}

fn run_json(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    serde_json::from_str(&out.stdout).expect("stdout is JSON")
}

fn error_code(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.code, 1, "{args:?} should be a domain error");
    let v: Value = serde_json::from_str(&out.stdout).expect("error document is JSON");
    v["error"]["code"].as_str().expect("error code").to_string()
}

#[test]
fn hecke_mul_quadratic_relation() {
    assert_eq!(run_json(&["hecke", "mul", "--preset", "A2", "Hs", "Hs"]), json!({"H1": "1", "Hs": "v^-1 - v"}));
}

#[test]
fn coxeter_cosets_example() {
    let v = run_json(&["coxeter", "cosets", "--preset", "A2", "--s1", "s", "--s2", "t"]);
    let pairs: Vec<(String, String)> = v["cosets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["min"].as_str().unwrap().into(), c["max"].as_str().unwrap().into()))
        .collect();
    assert_eq!(pairs, vec![("1".into(), "st".into()), ("ts".into(), "sts".into())]);
}

#[test]
fn hecke_star_example() {
    let v = run_json(&["hecke", "star", "--preset", "A1", "--s1", "s", "--s2", "s", "--s3", "s", "uHs", "uHs"]);
    assert_eq!(v["c:1"], json!("1"));
    assert_eq!(v["s1"], json!(["s"]));
    assert_eq!(v["s2"], json!(["s"]));
}

#[test]
fn flags_after_positional_elements() {
    let out = run(&["--preset", "A2", "hecke", "mul", "Hs", "(v^-1-v)H1", "--output", "text"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout, "(v^-1 - v) Hs\n");
}

#[test]
fn bimod_examples() {
    assert_eq!(
        run_json(&["--preset", "A2", "bimod", "hom", "s", "s", "--degree-bound", "12"]),
        json!({"agree": true, "formula": "v^-2 + 1", "grk": "v^-2 + 1"})
    );
    assert_eq!(run_json(&["--preset", "A2", "bimod", "ch", "st"]), json!({"H1": "1", "Hs": "v^-1", "Ht": "v^-1", "Hst": "v^-2"}));
    let out = run(&["--preset", "A2", "--s1", "s", "--s2", "t", "--output", "text", "bimod", "decompose", "1"]);
    assert_eq!(out.stdout, "1 x B(1/st)(-1)\n");
}

#[test]
fn usage_errors_exit_2() {
    for args in [&["hecke", "frob"][..], &["--output", "yaml", "hecke", "mul", "H1"], &[]] {
        let out = run(args);
        assert_eq!(out.code, 2, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn domain_errors_carry_module_codes() {
    assert_eq!(error_code(&["--preset", "A2", "hecke", "mul", "Hq"]), "UnknownGenerator");
    assert_eq!(error_code(&["--preset", "A2", "hecke", "mul", "Hs+"]), "ParseError");
    assert_eq!(error_code(&["--preset", "A1-adjoint", "--field", "F2", "--s1", "s", "schubert", "frobenius"]), "AssumptionFailed");
    // The trace itself is a Demazure operator and needs no Assumption: here it vanishes.
    assert_eq!(run_json(&["--preset", "A1-adjoint", "--field", "F2", "--s1", "s", "schubert", "frobenius", "e1"]), json!({}));
    let out = run(&["--preset", "A2", "hecke", "mul", "Hq"]);
    assert_eq!(out.stderr, "error[UnknownGenerator]: cannot parse \"q\"\n");
}

#[test]
fn find_p_absent_over_f2() {
    let v = run_json(&["--preset", "A1-adjoint", "--field", "F2", "--s1", "s", "schubert", "find-p"]);
    assert_eq!(v["status"], json!("Absent"));
}

#[test]
fn verify_a1_gl2_passes() {
    let out = run(&["verify", "all", "--preset", "A1-GL2"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], json!("pass"));
    assert!(v["checks"].as_array().unwrap().iter().all(|c| c["status"] == json!("pass")));
}

#[test]
fn verify_f2_skips_dependent_checks() {
    let out = run(&["verify", "schubert", "--preset", "A1-adjoint", "--field", "F2"]);
    assert_eq!(out.code, 1);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["status"], json!("fail"));
    let checks = v["checks"].as_array().unwrap();
    let assumption = checks.iter().find(|c| c["name"] == json!("schubert/assumption")).unwrap();
    assert_eq!(assumption["status"], json!("fail"));
    let skipped: Vec<&Value> = checks.iter().filter(|c| c["status"] == json!("skipped")).collect();
    assert_eq!(skipped.len(), 5);
    for c in skipped {
        assert_eq!(c["detail"]["code"], json!("AssumptionFailed"));
        assert_eq!(c["detail"]["subset"], json!(["s"]));
    }
    // Checks not depending on the failing subset still run and pass.
    assert!(checks.iter().filter(|c| c["status"] == json!("fail")).count() == 1);
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &["--preset", "A2", "verify", "hecke"][..],
        &["--preset", "B2", "--s1", "s", "schubert", "basis"],
        &["--preset", "A2", "--s1", "s", "--s2", "t", "bimod", "decompose", "st"],
    ] {
        assert_eq!(run(args), run(args), "{args:?}");
    }
    assert_ne!(
        run(&["--preset", "A2", "verify", "hecke", "--seed", "1"]).stdout,
        run(&["--preset", "A2", "verify", "hecke", "--seed", "2"]).stdout,
        "the seed is recorded in the report"
    );
}

#[test]
fn binary_exit_status() {
    let bin = env!("CARGO_BIN_EXE_sbim");
    let ok = std::process::Command::new(bin).args(["hecke", "mul", "--preset", "A2", "Hs", "Hs"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["Hs"], json!("v^-1 - v"));
    let bad = std::process::Command::new(bin).args(["hecke", "mul", "--preset", "A2", "Hq"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = std::process::Command::new(bin).args(["nonsense"]).output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}
