//! The twelve acceptance criteria, each on fixed presets and run on its own thread; the
//! report lists them in order regardless of completion order.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sbim_algebra::{Field, Laurent, Q};
use sbim_bimod::{Engine, SingularObject};
use sbim_coxeter::{DoubleCoset, Subset};
use sbim_hecke::{Hecke, HeckeElt};
use sbim_realization::{preset_doc, AnyRealization, FieldTag, Realization};
use sbim_schubert::Schubert;
use serde_json::json;

use super::modules::{pull_push_expected, schubert_suite};
use super::util::*;
use crate::args::{Common, Output};
use crate::context::Ctx;
use crate::ensure;
use crate::error::CliError;
use crate::report::{timed, CheckResult, Failure, Report, Status};

type Criterion = fn(u64) -> CheckResult;

/// `(number, name)` of every criterion, in order.
pub fn criteria() -> Vec<(usize, &'static str)> {
    table().iter().enumerate().map(|(i, (name, _))| (i + 1, *name)).collect()
}

fn table() -> [(&'static str, Criterion); 12] {
    [
        ("Hecke axioms in A1, A2, B2", c1_hecke_axioms),
        ("eigenvector identity of H̲_{w_S}", c2_eigenvector),
        ("Schubert suite on A2-GL3 and B2", c3_schubert),
        ("character is multiplicative (A2, words ≤ 3)", c4_character_multiplicative),
        ("character of push-forwards (A2, words ≤ 3)", c5_push_character),
        ("character of convolutions (A2, seeds ≤ 2)", c6_convolution),
        ("Hom formula (A2, seeds ≤ 2, D = 12)", c7_hom_formula),
        ("duality (A2, seeds ≤ 2)", c8_duality),
        ("classification of indecomposables (A2)", c9_classification),
        ("pull-back of push-forward (A2)", c10_pull_push),
        ("associativity and unit of convolution (A2)", c11_associativity),
        ("Assumption failure path (A1-adjoint over F2)", c12_assumption_failure),
    ]
}

/// Run every criterion; check names are `criterion N: description`.
pub fn run_acceptance(seed: u64) -> Report {
    let table = table();
    let checks = std::thread::scope(|scope| {
        let handles: Vec<_> = table
            .iter()
            .enumerate()
            .map(|(i, (name, f))| {
                let label = format!("criterion {}: {}", i + 1, name);
                scope.spawn(move || timed(&label, || f(seed)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("checks catch their own panics")).collect::<Vec<_>>()
    });
    let mut report = Report::new("acceptance", "fixed presets", seed);
    report.checks = checks;
    report
}

fn setup(preset: &str) -> Result<(Arc<Schubert<Q>>, Engine<Q>), Failure> {
    let real = preset_doc(preset)?.build::<Q>()?;
    let sch = Arc::new(Schubert::for_realization(real)?);
    let engine = Engine::new(sch.clone());
    Ok((sch, engine))
}

fn sub(sch: &Schubert<Q>, s: &str) -> Result<Subset, Failure> {
    Ok(sch.group.parse_subset(s)?)
}

/// Common options for running a module suite inside a criterion.
fn plain_common(seed: u64) -> Common {
    Common {
        preset: None,
        realization: None,
        field: None,
        s1: None,
        s2: None,
        s3: None,
        degree_bound: None,
        length_bound: None,
        seed,
        output: Output::Json,
        timings: false,
    }
}

fn c1_hecke_axioms(seed: u64) -> CheckResult {
    let mut detail = BTreeMap::new();
    for preset in ["A1", "A2", "B2"] {
        let (sch, _) = setup(preset)?;
        let g = &sch.group;
        let h = Hecke::new(g);
        let quad = Laurent::from_terms([(-1, 1), (1, -1)]);
        // H_s^{-1} = H_s + (v - v^{-1}).
        let inv_gen = |s: usize| h.gen(s).add(&HeckeElt::one().scale(&Laurent::from_terms([(1, 1), (-1, -1)])));
        let ws = words(g.rank(), 4);
        for w in &ws {
            let x = h.mul_all(&w.iter().map(|&s| h.gen(s)).collect::<Vec<_>>())?;
            let name = word_name(g, w);
            for s in 0..g.rank() {
                let sx = h.lmul_gen(s, &x)?;
                ensure!(h.lmul_gen(s, &sx)? == x.add(&sx.scale(&quad)), "{preset}: quadratic relation on H_{name}");
            }
            let bar_direct = h.mul_all(&w.iter().map(|&s| inv_gen(s)).collect::<Vec<_>>())?;
            ensure!(h.bar(&x)? == bar_direct, "{preset}: bar(H_{name}) ≠ product of inverses");
            ensure!(h.bar(&h.bar(&x)?)? == x, "{preset}: bar² on H_{name}");
            // ω is an anti-linear anti-homomorphism with ω(H_s) = H_s^{-1}.
            let rev = h.mul_all(&w.iter().rev().map(|&s| inv_gen(s)).collect::<Vec<_>>())?;
            ensure!(h.omega(&x)? == rev, "{preset}: ω(H_{name}) ≠ reversed product of inverses");
            ensure!(h.omega(&h.omega(&x)?)? == x, "{preset}: ω² on H_{name}");
        }
        for s in 0..g.rank() {
            for t in s + 1..g.rank() {
                let m = g.data().m(s, t).expect("finite presets") as usize;
                let alt = |a: usize, b: usize| (0..m).map(|i| h.gen(if i % 2 == 0 { a } else { b })).collect::<Vec<_>>();
                ensure!(h.mul_all(&alt(s, t))? == h.mul_all(&alt(t, s))?, "{preset}: braid relation ({s}, {t})");
            }
        }
        let els = g.all_elements().expect("finite presets").to_vec();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..50 {
            let a = random_elt(&els, &mut rng);
            let b = random_elt(&els, &mut rng);
            let (ab, ba) = (h.mul(&a, &b)?, h.mul(&b, &a)?);
            let show = || format!("{preset}: a = {}, b = {}", h.render(&a), h.render(&b));
            ensure!(h.bar(&ab)? == h.mul(&h.bar(&a)?, &h.bar(&b)?)?, "bar not multiplicative: {}", show());
            ensure!(h.omega(&ab)? == h.mul(&h.omega(&b)?, &h.omega(&a)?)?, "ω not an anti-homomorphism: {}", show());
            ensure!(ab.eps() == ba.eps(), "ε(ab) ≠ ε(ba): {}", show());
            ensure!(h.bar(&h.bar(&a)?)? == a && h.omega(&h.omega(&a)?)? == a, "involutions: {}", show());
        }
        detail.insert(preset, json!({"words": ws.len(), "random_pairs": 50}));
    }
    Ok(json!(detail))
}

fn c2_eigenvector(_: u64) -> CheckResult {
    let mut count = 0;
    for preset in ["A2", "B2"] {
        let (sch, _) = setup(preset)?;
        let g = &sch.group;
        let h = Hecke::new(g);
        for s2 in Subset::all(2) {
            let k = h.longest_kl(s2)?;
            for w in &g.parabolic(s2)?.elements {
                let lhs = h.mul(&k, &HeckeElt::basis(w.clone()))?;
                ensure!(lhs == k.shift(-(w.length() as i32)), "{preset}: H̲_{{w_S}}·H_{} for S = {}", g.name(w), subset_name(g, &s2));
                count += 1;
            }
        }
    }
    Ok(json!({ "identities": count }))
}

fn c3_schubert(seed: u64) -> CheckResult {
    let mut detail = BTreeMap::new();
    for preset in ["A2-GL3", "B2"] {
        let real = preset_doc(preset)?.build::<Q>()?;
        let ctx = Ctx::new(&plain_common(seed), real)?;
        let mut rep = Report::new("schubert", preset, seed);
        schubert_suite(&ctx, seed, &mut rep);
        for c in &rep.checks {
            ensure!(c.status == Status::Pass, "{preset}: {} is {}: {}", c.name, c.status, c.detail);
        }
        detail.insert(preset, json!(rep.checks.iter().map(|c| c.name.clone()).collect::<Vec<_>>()));
    }
    Ok(json!(detail))
}

fn c4_character_multiplicative(_: u64) -> CheckResult {
    let (sch, e) = setup("A2")?;
    let h = Hecke::new(&sch.group);
    let ws = words(2, 3);
    for w1 in &ws {
        for w2 in &ws {
            let (m, n) = (e.bs(w1)?, e.bs(w2)?);
            let lhs = e.ch(&*e.tensor(&m, &n)?)?;
            let rhs = h.mul(&e.ch(&m)?, &e.ch(&n)?)?;
            ensure!(lhs == rhs, "ch(BS({}) ⊗ BS({}))", word_name(&sch.group, w1), word_name(&sch.group, w2));
        }
    }
    Ok(json!({ "pairs": ws.len() * ws.len() }))
}

fn c5_push_character(_: u64) -> CheckResult {
    let (sch, e) = setup("A2")?;
    let g = &sch.group;
    let h = Hecke::new(g);
    let ws = words(2, 3);
    let mut count = 0;
    for w in &ws {
        let m = e.bs(w)?;
        let ch = e.ch(&m)?;
        for s1 in Subset::all(2) {
            for s2 in Subset::all(2) {
                let l2 = g.parabolic(s2)?.longest_length() as i32;
                let want = h.mul_all(&[h.longest_kl(s1)?, ch.clone(), h.longest_kl(s2)?])?.shift(-l2);
                let got = h.from_singular(&e.sing_ch(&e.induced(&m, s1, s2)?)?)?;
                ensure!(got == want, "BS({}) to ({}, {})", word_name(g, w), subset_name(g, &s1), subset_name(g, &s2));
                count += 1;
            }
        }
    }
    Ok(json!({ "pushes": count }))
}

fn c6_convolution(_: u64) -> CheckResult {
    let (sch, e) = setup("A2")?;
    let g = &sch.group;
    let h = Hecke::new(g);
    let seeds = words(2, 2);
    let subsets = Subset::all(2);
    let mut count = 0;
    for &s1 in &subsets {
        for &s2 in &subsets {
            for &s3 in &subsets {
                for w1 in &seeds {
                    let v1 = e.induced(&e.bs(w1)?, s1, s2)?;
                    let c1 = e.sing_ch(&v1)?;
                    for w2 in &seeds {
                        let v2 = e.induced(&e.bs(w2)?, s2, s3)?;
                        let got = e.sing_ch(&e.convolve(&v1, &v2)?)?;
                        ensure!(
                            got == h.star(&c1, &e.sing_ch(&v2)?)?,
                            "BS({}) over ({}, {}) and BS({}) over ({}, {})",
                            word_name(g, w1),
                            subset_name(g, &s1),
                            subset_name(g, &s2),
                            word_name(g, w2),
                            subset_name(g, &s2),
                            subset_name(g, &s3)
                        );
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(json!({ "convolutions": count }))
}

fn c7_hom_formula(_: u64) -> CheckResult {
    let (sch, e) = setup("A2")?;
    let g = &sch.group;
    let h = Hecke::new(g);
    let seeds = words(2, 2);
    let mut count = 0;
    for s1 in Subset::all(2) {
        for s2 in Subset::all(2) {
            let objs = seeds.iter().map(|w| e.bs(w)).collect::<Result<Vec<_>, _>>()?;
            let chs = objs.iter().map(|n| e.sing_ch(&e.induced(n, s1, s2)?)).collect::<Result<Vec<_>, _>>()?;
            for (i, n1) in objs.iter().enumerate() {
                for (j, n2) in objs.iter().enumerate() {
                    let got = e.hom_grk(s1, s2, n1, n2, Some(12))?;
                    let want = h.hom_grk_formula(&chs[i], &chs[j])?;
                    ensure!(
                        got == want,
                        "Hom(BS({}), BS({})) over ({}, {}): {} vs {}",
                        word_name(g, &seeds[i]),
                        word_name(g, &seeds[j]),
                        subset_name(g, &s1),
                        subset_name(g, &s2),
                        got,
                        want
                    );
                    count += 1;
                }
            }
        }
    }
    Ok(json!({ "pairs": count, "degree_bound": 12 }))
}

fn c8_duality(_: u64) -> CheckResult {
    let (sch, e) = setup("A2")?;
    let g = &sch.group;
    let h = Hecke::new(g);
    let mut count = 0;
    for s1 in Subset::all(2) {
        for s2 in Subset::all(2) {
            for w in words(2, 2) {
                let v = e.induced(&e.bs(&w)?, s1, s2)?;
                let tag = || format!("BS({}) over ({}, {})", word_name(g, &w), subset_name(g, &s1), subset_name(g, &s2));
                let dv = e.sing_dual(&v)?;
                ensure!(e.sing_ch(&dv)? == h.singular_bar(&e.sing_ch(&v)?)?, "sing_ch(D V) ≠ bar for {}", tag());
                let ddv = e.sing_dual(&dv)?;
                ensure!(e.sing_ch(&ddv)? == e.sing_ch(&v)?, "ch(D² V) for {}", tag());
                ensure!(e.sing_hilbert(&ddv, -8, 12)? == e.sing_hilbert(&v, -8, 12)?, "Hilb(D² V) for {}", tag());
                count += 1;
            }
        }
    }
    Ok(json!({ "objects": count }))
}

/// The indecomposable `B(x₋)` over `(∅,∅)`: the top summand of `BS(x₋)`, unshifted.
fn regular_indecomposable(e: &Engine<Q>, x: &DoubleCoset) -> Result<SingularObject<Q>, Failure> {
    let empty = Subset::empty();
    let word: Vec<usize> = x.min.word().iter().map(|&s| s as usize).collect();
    let d = e.decompose(&e.induced(&e.bs(&word)?, empty, empty)?)?;
    let top = d.summands.iter().find(|s| s.coset.min == x.min).ok_or_else(|| Failure("no top summand".into()))?;
    Ok(e.sing_shift(&top.object, -top.shift))
}

fn c9_classification(_: u64) -> CheckResult {
    let (sch, e) = setup("A2")?;
    let g = &sch.group;
    let h = Hecke::new(g);
    let n = sch.nvars();
    let (s, t) = (sub(&sch, "s")?, sub(&sch, "t")?);
    let mut runs = Vec::new();
    for (s1, s2) in [(s, t), (t, s)] {
        let cosets = g.double_cosets(s1, s2)?;
        let l1 = g.parabolic(s1)?.longest_length() as i32;
        let l2 = g.parabolic(s2)?.longest_length() as i32;
        let mut canonical: BTreeMap<String, SingularObject<Q>> = BTreeMap::new();
        let mut decomps = Vec::new();
        for x in &cosets {
            let xn = g.name(&x.min);
            let v = e.push(&regular_indecomposable(&e, x)?, s1, s2)?;
            let d = e.decompose(&v)?;
            // Shifts of the copies of B(x): −ℓ(w_{S₂}) + ℓ(w_I) − 2ℓ(w), w ∈ W_I.
            let stab = g.coset_stabilizer(x)?;
            let li = stab.iter().map(|w| w.length()).max().unwrap_or(0) as i32;
            let mut want: Vec<i32> = stab.iter().map(|w| -l2 + li - 2 * w.length() as i32).collect();
            let mut top: Vec<&sbim_bimod::Summand<Q>> = d.summands.iter().filter(|sm| sm.coset.min == x.min).collect();
            let mut got: Vec<i32> = top.iter().map(|sm| sm.shift).collect();
            want.sort();
            got.sort();
            ensure!(got == want, "{xn}: shifts of top summands {got:?}, expected {want:?}");
            // Each copy of B(x)(n) has stalk ^{S₁}R^{S₂}_x(ℓ(x₊) − ℓ(w_{S₁}) + n) at x, and all copies
            // are shifts of one indecomposable: B(x) is the suitable shift of any of them.
            let k = x.max.length() as i32 - l1;
            let poincare = e.stabilizer_poincare(x)?;
            let hilb = invariant_hilbert(n, &poincare, 24);
            for sm in &top {
                let shift = k + sm.shift;
                for d in -shift - 2..=12 - shift {
                    let want = if d + shift < 0 { 0 } else { hilb[(d + shift) as usize] as usize };
                    let got = e.costalk_rank(&sm.object, x, d)?;
                    ensure!(got == want, "{xn}: stalk of the copy with shift {} has rank {got} in degree {d}, expected {want}", sm.shift);
                }
            }
            for pair in top.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                ensure!(
                    e.isomorphic(&e.sing_shift(&a.object, b.shift - a.shift), &b.object)?,
                    "{xn}: top summands with shifts {} and {} are not shifts of one object",
                    a.shift,
                    b.shift
                );
            }
            top.truncate(1);
            let b = &top[0].object;
            let supp = e.sing_support(b)?;
            ensure!(supp.iter().any(|y| y.min == x.min), "{xn} is not in the support of B(x)");
            ensure!(supp.iter().all(|y| g.coset_leq(y, x)), "support of B({xn}) is not below {xn}");
            canonical.insert(xn.clone(), e.sing_shift(b, -top[0].shift));
            decomps.push((x.clone(), v, d));
        }
        // Every summand is some B(y)(n), and its character is unitriangular.
        let mut summands = Vec::new();
        for (x, v, d) in &decomps {
            let chs = e.summand_characters(v, d)?;
            for (sm, ch) in d.summands.iter().zip(&chs) {
                let yn = g.name(&sm.coset.min);
                let b = canonical.get(&yn).ok_or_else(|| Failure(format!("no reference object for {yn}")))?;
                ensure!(e.isomorphic(&sm.object, &e.sing_shift(b, sm.shift))?, "summand of π_*B({}) is not B({yn})({})", g.name(&x.min), sm.shift);
                let c = ch.shift(-sm.shift);
                ensure!(unitriangular_at(g, &c, &sm.coset)?, "sing_ch of B({yn}) is not unitriangular");
                ensure!(c == h.bar_invariant_element(&sm.coset)?, "sing_ch of B({yn}) differs from the bar-invariant element");
                summands.push(json!({"from": g.name(&x.min), "coset": yn, "shift": sm.shift}));
            }
        }
        runs.push(json!({"s1": g.subset_names(&s1), "s2": g.subset_names(&s2), "summands": summands}));
    }
    Ok(json!(runs))
}

fn c10_pull_push(_: u64) -> CheckResult {
    let (sch, e) = setup("A2")?;
    let g = &sch.group;
    let empty = Subset::empty();
    let mut count = 0;
    for (label, m) in [("unit", e.unit()), ("BS(s)", e.bs(&[0])?)] {
        for s1 in Subset::all(2) {
            for s2 in Subset::all(2) {
                let p = e.pull(&e.induced(&m, s1, s2)?, empty, empty)?;
                let want = pull_push_expected(&e, &m, s1, s2, -4, 12)?;
                ensure!(e.sing_hilbert(&p, -4, 12)? == want, "{label} over ({}, {})", subset_name(g, &s1), subset_name(g, &s2));
                count += 1;
            }
        }
    }
    Ok(json!({ "cases": count, "degrees": [-4, 12] }))
}

fn c11_associativity(_: u64) -> CheckResult {
    let (sch, e) = setup("A2")?;
    let (s, t) = (sub(&sch, "s")?, sub(&sch, "t")?);
    let v1 = e.induced(&e.bs(&[1])?, s, t)?;
    let v2 = e.induced(&e.bs(&[0])?, t, s)?;
    let v3 = e.induced(&e.unit(), s, Subset::empty())?;
    let a = e.convolve(&e.convolve(&v1, &v2)?, &v3)?;
    let b = e.convolve(&v1, &e.convolve(&v2, &v3)?)?;
    ensure!(e.sing_ch(&a)? == e.sing_ch(&b)?, "characters of the two bracketings differ");
    ensure!(e.sing_hilbert(&a, -4, 12)? == e.sing_hilbert(&b, -4, 12)?, "Hilbert series of the two bracketings differ");
    for (v, l, r) in [(&v1, s, t), (&v2, t, s), (&v3, s, Subset::empty())] {
        for w in [e.convolve(&e.singular_unit(l)?, v)?, e.convolve(v, &e.singular_unit(r)?)?] {
            ensure!(e.sing_ch(&w)? == e.sing_ch(v)?, "the unit changes a character");
            ensure!(e.sing_hilbert(&w, -4, 12)? == e.sing_hilbert(v, -4, 12)?, "the unit changes a Hilbert series");
        }
    }
    Ok(json!({"triple": ["BS(t) over ({s},{t})", "BS(s) over ({t},{s})", "unit over ({s},{})"]}))
}

fn c12_assumption_failure(seed: u64) -> CheckResult {
    let AnyRealization::F2(real) = AnyRealization::preset("A1-adjoint", FieldTag::Fp(2))? else {
        return Err(Failure("A1-adjoint over F2 did not load over F2".into()));
    };
    check_failure_path(real, seed)
}

fn check_failure_path<F: Field>(real: Realization<F>, seed: u64) -> CheckResult {
    let ctx = Ctx::new(&plain_common(seed), real)?;
    let g = ctx.group();
    let s = g.parse_subset("s")?;
    ensure!(ctx.sch.find_p(s)?.is_none(), "find_p found a polynomial");
    let mut rep = Report::new("schubert", "A1-adjoint over F2", seed);
    schubert_suite(&ctx, seed, &mut rep);
    let assumption = rep.checks.iter().find(|c| c.name == "schubert/assumption").ok_or_else(|| Failure("no Assumption entry".into()))?;
    ensure!(assumption.status == Status::Fail, "the Assumption check did not fail");
    let skipped: Vec<_> = rep.checks.iter().filter(|c| c.status == Status::Skipped).collect();
    ensure!(!skipped.is_empty(), "no dependent checks were skipped");
    for c in &skipped {
        ensure!(c.detail["code"] == "AssumptionFailed" && c.detail["subset"] == json!(["s"]), "{} lacks a machine-readable reason", c.name);
    }
    let frob = ctx.sch.frobenius(s);
    ensure!(frob.is_err(), "Frobenius data computed without the Assumption");
    let code = CliError::from(frob.err().unwrap());
    Ok(json!({
        "find_p": "Absent",
        "skipped": skipped.iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
        "frobenius_error": code.code(),
    }))
}
