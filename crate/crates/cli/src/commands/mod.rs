//! One handler per subcommand; each returns a JSON document and its text rendering.

use std::sync::Arc;

use sbim_algebra::{Field, Laurent, Poly};
use sbim_bimod::{coset_json, RegularObject, SingularObject};
use sbim_coxeter::Subset;
use sbim_hecke::{Hecke, HeckeElt, SingularHeckeElt};
use sbim_realization::{FieldTag, Realization};
use sbim_schubert::poly_to_json;
use serde_json::{json, Value};

use crate::args::{BimodCmd, Cmd, Common, CoxeterCmd, HeckeCmd, RealizeCmd, SchubertCmd};
use crate::context::Ctx;
use crate::error::CliError;
use crate::Rendered;

pub fn run<F: Field>(cmd: &Cmd, common: &Common, field: FieldTag, real: Realization<F>) -> Result<Rendered, CliError> {
    if let Cmd::Realize { cmd: RealizeCmd::Show } = cmd {
        let doc = real.to_doc(field);
        return Ok(Rendered::json(serde_json::to_value(doc).expect("documents serialize")));
    }
    let ctx = Ctx::new(common, real)?;
    match cmd {
        Cmd::Realize { cmd: RealizeCmd::Check } => realize_check(&ctx, field),
        Cmd::Realize { cmd: RealizeCmd::Show } => unreachable!("handled above"),
        Cmd::Coxeter { cmd } => coxeter(&ctx, cmd),
        Cmd::Hecke { cmd } => hecke(&ctx, cmd),
        Cmd::Schubert { cmd } => schubert(&ctx, cmd),
        Cmd::Bimod { cmd } => bimod(&ctx, cmd),
        Cmd::Verify { .. } => unreachable!("dispatched before loading a realization"),
    }
}

fn realize_check<F: Field>(ctx: &Ctx<F>, field: FieldTag) -> Result<Rendered, CliError> {
    let g = ctx.group();
    let mut subsets = Vec::new();
    let mut lines = Vec::new();
    for s in Subset::all(g.rank()) {
        let names = g.subset_names(&s);
        let rep = ctx.sch.check_assumption(s)?;
        subsets.push(json!({
            "subset": names,
            "finitary": rep.finitary,
            "assumption": rep.holds(),
            "reason": rep.reason(),
        }));
        lines.push(format!(
            "  {{{}}}: {}",
            names.join(","),
            rep.reason().unwrap_or_else(|| "Assumption holds".into())
        ));
    }
    let gens = g.data().generators().to_vec();
    let out = json!({
        "valid": true,
        "field": field.to_string(),
        "generators": gens,
        "dim_v": ctx.sch.nvars(),
        "subsets": subsets,
    });
    let text = format!(
        "valid realization over {field}, generators {}, dim V = {}\n{}",
        gens.join(","),
        ctx.sch.nvars(),
        lines.join("\n")
    );
    Ok(Rendered::with_text(out, text))
}

fn coxeter<F: Field>(ctx: &Ctx<F>, cmd: &CoxeterCmd) -> Result<Rendered, CliError> {
    let g = ctx.group();
    match cmd {
        CoxeterCmd::Cosets => {
            let (s1, s2) = ctx.pair()?;
            let cosets = g.double_cosets(s1, s2)?;
            let list: Vec<Value> = cosets
                .iter()
                .map(|x| {
                    let mut v = coset_json(g, x);
                    v["members"] = json!(x.members.iter().map(|w| g.name(w)).collect::<Vec<_>>());
                    v
                })
                .collect();
            let text = cosets.iter().map(|x| format!("{}/{}", g.name(&x.min), g.name(&x.max))).collect::<Vec<_>>().join("\n");
            Ok(Rendered::with_text(json!({ "cosets": list }), text))
        }
        CoxeterCmd::Bruhat { a, b } => {
            let (x, y) = (g.parse_element(a)?, g.parse_element(b)?);
            let leq = g.bruhat_leq(&x, &y);
            Ok(Rendered::with_text(json!({"a": g.name(&x), "b": g.name(&y), "leq": leq}), leq.to_string()))
        }
        CoxeterCmd::Mul { words } => {
            let mut p = g.normalize(&[]);
            for w in words {
                p = g.mul(&p, &g.parse_element(w)?)?;
            }
            Ok(Rendered::with_text(json!({"product": g.name(&p), "length": p.length()}), g.name(&p)))
        }
    }
}

fn render_singular(h: &Hecke, x: &SingularHeckeElt) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let g = h.group;
    x.terms()
        .rev()
        .map(|(w, c)| {
            if *c == Laurent::one() {
                format!("c:{}", g.name(w))
            } else {
                format!("({c}) c:{}", g.name(w))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn hecke_out(h: &Hecke, x: &HeckeElt) -> Rendered {
    Rendered::with_text(h.to_json(x), h.render(x))
}

fn singular_out(h: &Hecke, x: &SingularHeckeElt) -> Rendered {
    Rendered::with_text(h.singular_to_json(x), render_singular(h, x))
}

fn hecke<F: Field>(ctx: &Ctx<F>, cmd: &HeckeCmd) -> Result<Rendered, CliError> {
    let g = ctx.group();
    let h = Hecke::new(g);
    match cmd {
        HeckeCmd::Mul { elts } => {
            let xs = elts.iter().map(|e| h.parse(e)).collect::<Result<Vec<_>, _>>()?;
            Ok(hecke_out(&h, &h.mul_all(&xs)?))
        }
        HeckeCmd::Bar { elt } => Ok(hecke_out(&h, &h.bar(&h.parse(elt)?)?)),
        HeckeCmd::Omega { elt } => Ok(hecke_out(&h, &h.omega(&h.parse(elt)?)?)),
        HeckeCmd::ToSingular { elt } => {
            let (s1, s2) = ctx.pair()?;
            Ok(singular_out(&h, &h.to_singular(&h.parse(elt)?, s1, s2)?))
        }
        HeckeCmd::Star { a, b } => {
            let (s1, s2, s3) = (ctx.subset(1)?, ctx.subset(2)?, ctx.subset(3)?);
            let x = h.to_singular(&h.parse(a)?, s1, s2)?;
            let y = h.to_singular(&h.parse(b)?, s2, s3)?;
            Ok(singular_out(&h, &h.star(&x, &y)?))
        }
        HeckeCmd::Klbasis { w: Some(w) } => Ok(hecke_out(&h, &h.kl_element(&g.parse_element(w)?)?)),
        HeckeCmd::Klbasis { w: None } => {
            let (s1, s2) = ctx.pair()?;
            let basis = h.bar_invariant_basis(s1, s2)?;
            let text = basis.iter().map(|b| render_singular(&h, b)).collect::<Vec<_>>().join("\n");
            Ok(Rendered::with_text(json!(basis.iter().map(|b| h.singular_to_json(b)).collect::<Vec<_>>()), text))
        }
        HeckeCmd::PushChar { elt } => {
            let (s1, s2) = ctx.pair()?;
            Ok(singular_out(&h, &h.push_char(&h.parse(elt)?, s1, s2)?))
        }
        HeckeCmd::HomGrk { a, b } => {
            let (s1, s2) = ctx.pair()?;
            let x = h.to_singular(&h.parse(a)?, s1, s2)?;
            let y = h.to_singular(&h.parse(b)?, s1, s2)?;
            let r = h.hom_grk_formula(&x, &y)?;
            Ok(Rendered::with_text(json!({"grk": r.to_string()}), r.to_string()))
        }
    }
}

fn poly_text<F: Field>(p: &Poly<F>) -> String {
    let n = p.nvars();
    p.render(&sbim_algebra::poly::default_names(n))
}

fn schubert<F: Field>(ctx: &Ctx<F>, cmd: &SchubertCmd) -> Result<Rendered, CliError> {
    let g = ctx.group();
    let sch = &ctx.sch;
    match cmd {
        SchubertCmd::Demazure { word, poly } => {
            let w = g.parse_word(word)?;
            let r = sch.demazure_word(&w, &ctx.poly(poly)?)?;
            Ok(Rendered::with_text(poly_to_json(&r), poly_text(&r)))
        }
        SchubertCmd::FindP => {
            let s1 = ctx.subset(1)?;
            let rep = sch.check_assumption(s1)?;
            let p = if rep.finitary { sch.find_p(s1)? } else { None };
            let out = json!({
                "subset": g.subset_names(&s1),
                "status": if p.is_some() { "Found" } else { "Absent" },
                "p": p.as_ref().map(poly_to_json),
                "reason": rep.reason(),
            });
            let text = match &p {
                Some(p) => format!("Found {}", poly_text(p)),
                None => "Absent".into(),
            };
            Ok(Rendered::with_text(out, text))
        }
        SchubertCmd::Basis { poly } => {
            let s1 = ctx.subset(1)?;
            let fd = sch.frobenius(s1)?;
            let mut out = json!({
                "subset": g.subset_names(&s1),
                "p": poly_to_json(&fd.p),
                "elements": fd.elements.iter().map(|w| g.name(w)).collect::<Vec<_>>(),
                "basis": fd.basis.iter().map(poly_to_json).collect::<Vec<_>>(),
                "dual": fd.dual.iter().map(poly_to_json).collect::<Vec<_>>(),
            });
            let mut text: Vec<String> = fd
                .elements
                .iter()
                .zip(fd.basis.iter().zip(&fd.dual))
                .map(|(w, (b, d))| format!("{}: basis {} | dual {}", g.name(w), poly_text(b), poly_text(d)))
                .collect();
            if let Some(p) = poly {
                let coords = sch.express(s1, &ctx.poly(p)?)?;
                text.push(format!("coordinates: [{}]", coords.iter().map(poly_text).collect::<Vec<_>>().join(", ")));
                out["coordinates"] = json!(coords.iter().map(poly_to_json).collect::<Vec<_>>());
            }
            Ok(Rendered::with_text(out, text.join("\n")))
        }
        SchubertCmd::Frobenius { poly: Some(p) } => {
            let s1 = ctx.subset(1)?;
            let r = sch.frobenius_trace(s1, &ctx.poly(p)?)?;
            Ok(Rendered::with_text(poly_to_json(&r), poly_text(&r)))
        }
        SchubertCmd::Frobenius { poly: None } => {
            // The trace pairing ∂_{w_{S₁}}(b_i·q_j) of the basis against the dual basis.
            let s1 = ctx.subset(1)?;
            let fd = sch.frobenius(s1)?;
            let mut gram = Vec::new();
            for b in &fd.basis {
                let row =
                    fd.dual.iter().map(|q| sch.frobenius_trace(s1, &(b * q))).collect::<Result<Vec<_>, _>>()?;
                gram.push(row);
            }
            let text = gram.iter().map(|r| r.iter().map(poly_text).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join("\n");
            let json_gram: Vec<Vec<Value>> = gram.iter().map(|r| r.iter().map(poly_to_json).collect()).collect();
            Ok(Rendered::with_text(json!({"subset": g.subset_names(&s1), "pairing": json_gram}), text))
        }
        SchubertCmd::FElements => {
            let s1 = ctx.subset(1)?;
            let par = g.parabolic(s1)?;
            let fs = sch.f_elements(s1)?;
            let names: Vec<String> = par.elements.iter().map(|w| g.name(w)).collect();
            let list: Vec<Value> = names
                .iter()
                .zip(&fs)
                .map(|(w, f)| {
                    let phi: serde_json::Map<String, Value> =
                        names.iter().zip(&f.coords).map(|(y, c)| (y.clone(), poly_to_json(c))).collect();
                    json!({"w": w, "phi": phi})
                })
                .collect();
            let text = names
                .iter()
                .zip(&fs)
                .map(|(w, f)| format!("F_{w}: [{}]", f.coords.iter().map(poly_text).collect::<Vec<_>>().join(", ")))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Rendered::with_text(json!({"subset": g.subset_names(&s1), "elements": list}), text))
        }
    }
}

/// `WORD` or `F{SUBSET}`, optionally followed by `(n)`.
fn parse_object<F: Field>(ctx: &Ctx<F>, text: &str) -> Result<Arc<RegularObject<F>>, CliError> {
    let t = text.trim();
    let bad = || CliError::usage(format!("cannot parse object {text:?}: expected WORD, 1 or F{{SUBSET}} with optional (n)"));
    let (body, shift) = match t.strip_suffix(')') {
        Some(rest) => {
            let open = rest.rfind('(').ok_or_else(bad)?;
            let n: i32 = rest[open + 1..].trim().parse().map_err(|_| bad())?;
            (rest[..open].trim(), n)
        }
        None => (t, 0),
    };
    let e = &ctx.engine;
    let obj = if let Some(inner) = body.strip_prefix("F{").and_then(|r| r.strip_suffix('}')) {
        let s = ctx.group().parse_subset(inner).map_err(|e| CliError::usage(e.to_string()))?;
        e.frobenius_object(s)?
    } else if body == "1" {
        e.unit()
    } else {
        let w = ctx.group().parse_word(body)?;
        e.bs(&w.iter().map(|&s| s as usize).collect::<Vec<_>>())?
    };
    Ok(if shift == 0 { obj } else { e.shift(&obj, shift) })
}

fn object_out<F: Field>(ctx: &Ctx<F>, v: &SingularObject<F>) -> Result<Rendered, CliError> {
    let h = Hecke::new(ctx.group());
    let ch = ctx.engine.sing_ch(v)?;
    let out = json!({"object": ctx.engine.object_json(v)?, "ch": h.singular_to_json(&ch)});
    let text = format!("rank {} over R, ch = {}", v.source.rank(), render_singular(&h, &ch));
    Ok(Rendered::with_text(out, text))
}

fn bimod<F: Field>(ctx: &Ctx<F>, cmd: &BimodCmd) -> Result<Rendered, CliError> {
    let e = &ctx.engine;
    let g = ctx.group();
    let h = Hecke::new(g);
    let empty = Subset::empty();
    match cmd {
        BimodCmd::Bs { word } => object_out(ctx, &e.induced(&parse_object(ctx, word)?, empty, empty)?),
        BimodCmd::Frobenius => {
            let s1 = ctx.subset(1)?;
            object_out(ctx, &e.induced(&e.frobenius_object(s1)?, empty, empty)?)
        }
        BimodCmd::Tensor { a, b } => {
            let m = e.tensor(&*parse_object(ctx, a)?, &*parse_object(ctx, b)?)?;
            object_out(ctx, &e.induced(&m, empty, empty)?)
        }
        BimodCmd::Push { obj } => {
            let (s1, s2) = ctx.pair()?;
            object_out(ctx, &e.induced(&parse_object(ctx, obj)?, s1, s2)?)
        }
        BimodCmd::Pull { obj } => {
            let (s1, s2) = ctx.pair()?;
            let v = e.induced(&parse_object(ctx, obj)?, s1, s2)?;
            object_out(ctx, &e.pull(&v, empty, empty)?)
        }
        BimodCmd::Convolve { a, b } => {
            let (s1, s2, s3) = (ctx.subset(1)?, ctx.subset(2)?, ctx.subset(3)?);
            g.parabolic(s3)?;
            let x = e.induced(&parse_object(ctx, a)?, s1, s2)?;
            let y = e.induced(&parse_object(ctx, b)?, s2, s3)?;
            object_out(ctx, &e.convolve(&x, &y)?)
        }
        BimodCmd::Ch { obj } => {
            let m = parse_object(ctx, obj)?;
            if ctx.common.s1.is_none() && ctx.common.s2.is_none() {
                Ok(hecke_out(&h, &e.ch(&m)?))
            } else {
                let (s1, s2) = ctx.pair()?;
                Ok(singular_out(&h, &e.sing_ch(&e.induced(&m, s1, s2)?)?))
            }
        }
        BimodCmd::Dual { obj } => {
            let (s1, s2) = ctx.pair()?;
            let v = e.induced(&parse_object(ctx, obj)?, s1, s2)?;
            object_out(ctx, &e.sing_dual(&v)?)
        }
        BimodCmd::Hom { a, b } => {
            let (s1, s2) = ctx.pair()?;
            let (n1, n2) = (parse_object(ctx, a)?, parse_object(ctx, b)?);
            let got = e.hom_grk(s1, s2, &n1, &n2, ctx.common.degree_bound)?;
            let c1 = e.sing_ch(&e.induced(&n1, s1, s2)?)?;
            let c2 = e.sing_ch(&e.induced(&n2, s1, s2)?)?;
            let formula = h.hom_grk_formula(&c1, &c2)?;
            let out = json!({"grk": got.to_string(), "formula": formula.to_string(), "agree": got == formula});
            Ok(Rendered::with_text(out, format!("grk {got}; formula {formula}")))
        }
        BimodCmd::Decompose { obj } => {
            let (s1, s2) = ctx.pair()?;
            let d = e.decompose(&e.induced(&parse_object(ctx, obj)?, s1, s2)?)?;
            let text = d
                .multiplicities()
                .iter()
                .map(|(x, n, m)| format!("{m} x B({}/{})({n})", g.name(&x.min), g.name(&x.max)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Rendered::with_text(e.decomposition_json(&d), text))
        }
    }
}
