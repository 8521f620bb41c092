//! Configuration documents, presets and runtime field dispatch.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use sbim_algebra::{Field, FBig, Q, F11, F13, F2, F3, F5, F7};
use serde::{Deserialize, Serialize};

use crate::data::{CoxeterData, Realization};
use crate::error::RealizationError;

/// A Coxeter matrix entry: an integer or the string `"inf"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MEntry {
    Int(u32),
    Str(String),
}

/// A rational entry: an integer or a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatEntry {
    Int(i64),
    Str(String),
}

/// Coefficient field selector: `"Q"` or `{"Fp": p}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    Named(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec::Named("Q".into())
    }
}

/// Resolved field tag: characteristic 0 or a prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldTag {
    Q,
    Fp(u64),
}

impl FieldSpec {
    pub fn tag(&self) -> Result<FieldTag, RealizationError> {
        match self {
            FieldSpec::Named(s) => parse_field_name(s),
            FieldSpec::Prime { fp } => Ok(FieldTag::Fp(*fp)),
        }
    }
}

/// Parse `Q`, `F2`, `Fp(7)`, `7` style field names.
pub fn parse_field_name(s: &str) -> Result<FieldTag, RealizationError> {
    let t = s.trim();
    if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rationals") {
        return Ok(FieldTag::Q);
    }
    let digits: String = t.chars().filter(|c| c.is_ascii_digit()).collect();
    match digits.parse::<u64>() {
        Ok(p) if t.starts_with(['F', 'f']) || t.chars().all(|c| c.is_ascii_digit()) => Ok(FieldTag::Fp(p)),
        _ => Err(RealizationError::Schema(format!("unknown field {s:?}"))),
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldTag::Q => write!(f, "Q"),
            FieldTag::Fp(p) => write!(f, "F{p}"),
        }
    }
}

/// Serialized realization document.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RealizationDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(default)]
    pub generators: Vec<String>,
    #[serde(default)]
    pub coxeter_matrix: Vec<Vec<MEntry>>,
    #[serde(default)]
    pub dim_v: usize,
    #[serde(default)]
    pub alpha: BTreeMap<String, Vec<RatEntry>>,
    #[serde(default)]
    pub alpha_check: BTreeMap<String, Vec<RatEntry>>,
    #[serde(default)]
    pub field: FieldSpec,
    #[serde(default)]
    pub assume_balancedness: bool,
}

/// Names of the built-in presets (aliases `A1`, `A2` included).
pub const PRESETS: &[&str] = &["A1-adjoint", "A1-GL2", "A2-GL3", "A3-GL4", "B2", "G2", "A1", "A2"];

fn ints(v: &[i64]) -> Vec<RatEntry> {
    v.iter().map(|x| RatEntry::Int(*x)).collect()
}

fn ints_to_matrix(names: &[&str], m: &[&[u32]]) -> Vec<Vec<MEntry>> {
    let _ = names;
    m.iter().map(|r| r.iter().map(|x| MEntry::Int(*x)).collect()).collect()
}

/// Document of a built-in preset. `A1` is `A1-adjoint`; `A2` is the two-dimensional
/// root-basis realization of type `A_2` with Cartan pairings −1.
pub fn preset_doc(name: &str) -> Result<RealizationDoc, RealizationError> {
    let mut doc = RealizationDoc { preset: Some(name.to_string()), ..Default::default() };
    let set = |doc: &mut RealizationDoc, gens: &[&str], m: &[&[u32]], dim: usize, a: &[&[i64]], ac: &[&[i64]]| {
        doc.generators = gens.iter().map(|s| s.to_string()).collect();
        doc.coxeter_matrix = ints_to_matrix(gens, m);
        doc.dim_v = dim;
        for (i, g) in gens.iter().enumerate() {
            doc.alpha.insert(g.to_string(), ints(a[i]));
            doc.alpha_check.insert(g.to_string(), ints(ac[i]));
        }
        doc.assume_balancedness = true;
    };
    match name {
        "A1-adjoint" | "A1" => set(&mut doc, &["s"], &[&[1]], 1, &[&[1]], &[&[2]]),
        "A1-GL2" => set(&mut doc, &["s"], &[&[1]], 2, &[&[1, -1]], &[&[1, -1]]),
        "A2-GL3" => {
            let r: &[&[i64]] = &[&[1, -1, 0], &[0, 1, -1]];
            set(&mut doc, &["s", "t"], &[&[1, 3], &[3, 1]], 3, r, r)
        }
        "A3-GL4" => {
            let r: &[&[i64]] = &[&[1, -1, 0, 0], &[0, 1, -1, 0], &[0, 0, 1, -1]];
            set(&mut doc, &["s", "t", "u"], &[&[1, 3, 2], &[3, 1, 3], &[2, 3, 1]], 4, r, r)
        }
        "A2" => set(&mut doc, &["s", "t"], &[&[1, 3], &[3, 1]], 2, &[&[1, 0], &[0, 1]], &[&[2, -1], &[-1, 2]]),
        "B2" => set(&mut doc, &["s", "t"], &[&[1, 4], &[4, 1]], 2, &[&[1, 0], &[0, 1]], &[&[2, -2], &[-1, 2]]),
        "G2" => set(&mut doc, &["s", "t"], &[&[1, 6], &[6, 1]], 2, &[&[1, 0], &[0, 1]], &[&[2, -3], &[-1, 2]]),
        _ => return Err(RealizationError::UnknownPreset(name.to_string())),
    }
    Ok(doc)
}

fn parse_rat<F: Field>(e: &RatEntry) -> Result<F, RealizationError> {
    match e {
        RatEntry::Int(n) => F::from_ratio(&BigInt::from(*n), &BigInt::from(1)),
        RatEntry::Str(s) => F::parse(s),
    }
    .ok_or_else(|| RealizationError::Schema(format!("invalid field element {e:?}")))
}

impl RealizationDoc {
    /// Coxeter data of the document (presets expanded).
    pub fn coxeter(&self) -> Result<CoxeterData, RealizationError> {
        let doc = self.expanded()?;
        let matrix = doc
            .coxeter_matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        MEntry::Int(m) => Ok(Some(*m)),
                        MEntry::Str(s) if s == "inf" || s == "∞" => Ok(None),
                        MEntry::Str(s) => Err(RealizationError::Schema(format!("bad Coxeter entry {s:?}"))),
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        CoxeterData::new(doc.generators.clone(), matrix)
    }

    /// Replace a preset reference by its data, keeping the requested field.
    pub fn expanded(&self) -> Result<RealizationDoc, RealizationError> {
        match &self.preset {
            Some(p) if self.generators.is_empty() => {
                let mut d = preset_doc(p)?;
                d.field = self.field.clone();
                Ok(d)
            }
            _ => Ok(self.clone()),
        }
    }

    /// Build a realization over a concrete field.
    pub fn build<F: Field>(&self) -> Result<Realization<F>, RealizationError> {
        let doc = self.expanded()?;
        let cox = doc.coxeter()?;
        let vecs = |map: &BTreeMap<String, Vec<RatEntry>>, what: &str| -> Result<Vec<Vec<F>>, RealizationError> {
            cox.generators()
                .iter()
                .map(|g| {
                    map.get(g)
                        .ok_or_else(|| RealizationError::Schema(format!("{what} missing generator {g}")))?
                        .iter()
                        .map(parse_rat::<F>)
                        .collect()
                })
                .collect()
        };
        let alpha = vecs(&doc.alpha, "alpha")?;
        let alpha_check = vecs(&doc.alpha_check, "alpha_check")?;
        Realization::new(cox, doc.dim_v, alpha, alpha_check, doc.assume_balancedness)
    }
}

impl<F: Field> Realization<F> {
    /// Serialize to a document (field recorded as given).
    pub fn to_doc(&self, field: FieldTag) -> RealizationDoc {
        let gens = self.coxeter.generators();
        let coxeter_matrix = self
            .coxeter
            .matrix()
            .iter()
            .map(|r| r.iter().map(|m| m.map(MEntry::Int).unwrap_or_else(|| MEntry::Str("inf".into()))).collect())
            .collect();
        let enc = |v: &Vec<F>| v.iter().map(|x| RatEntry::Str(x.to_string())).collect::<Vec<_>>();
        RealizationDoc {
            preset: None,
            generators: gens.to_vec(),
            coxeter_matrix,
            dim_v: self.dim_v,
            alpha: gens.iter().cloned().zip(self.alpha.iter().map(enc)).collect(),
            alpha_check: gens.iter().cloned().zip(self.alpha_check.iter().map(enc)).collect(),
            field: match field {
                FieldTag::Q => FieldSpec::Named("Q".into()),
                FieldTag::Fp(p) => FieldSpec::Prime { fp: p },
            },
            assume_balancedness: self.assume_balancedness,
        }
    }
}

/// A realization over one of the supported fields.
#[derive(Clone, Debug)]
pub enum AnyRealization {
    Q(Realization<Q>),
    F2(Realization<F2>),
    F3(Realization<F3>),
    F5(Realization<F5>),
    F7(Realization<F7>),
    F11(Realization<F11>),
    F13(Realization<F13>),
    FBig(Realization<FBig>),
}

/// Run generic code on the concrete realization inside an [`AnyRealization`].
#[macro_export]
macro_rules! with_realization {
    ($any:expr, $r:ident => $body:expr) => {
        match $any {
            $crate::AnyRealization::Q($r) => $body,
            $crate::AnyRealization::F2($r) => $body,
            $crate::AnyRealization::F3($r) => $body,
            $crate::AnyRealization::F5($r) => $body,
            $crate::AnyRealization::F7($r) => $body,
            $crate::AnyRealization::F11($r) => $body,
            $crate::AnyRealization::F13($r) => $body,
            $crate::AnyRealization::FBig($r) => $body,
        }
    };
}

impl AnyRealization {
    /// Load a document over the field it names.
    pub fn from_doc(doc: &RealizationDoc) -> Result<Self, RealizationError> {
        Self::from_doc_with_field(doc, doc.field.tag()?)
    }

    pub fn from_doc_with_field(doc: &RealizationDoc, field: FieldTag) -> Result<Self, RealizationError> {
        Ok(match field {
            FieldTag::Q => AnyRealization::Q(doc.build()?),
            FieldTag::Fp(2) => AnyRealization::F2(doc.build()?),
            FieldTag::Fp(3) => AnyRealization::F3(doc.build()?),
            FieldTag::Fp(5) => AnyRealization::F5(doc.build()?),
            FieldTag::Fp(7) => AnyRealization::F7(doc.build()?),
            FieldTag::Fp(11) => AnyRealization::F11(doc.build()?),
            FieldTag::Fp(13) => AnyRealization::F13(doc.build()?),
            FieldTag::Fp(2147483647) => AnyRealization::FBig(doc.build()?),
            FieldTag::Fp(p) => return Err(RealizationError::UnsupportedField(p)),
        })
    }

    pub fn preset(name: &str, field: FieldTag) -> Result<Self, RealizationError> {
        Self::from_doc_with_field(&preset_doc(name)?, field)
    }

    pub fn field(&self) -> FieldTag {
        match self {
            AnyRealization::Q(_) => FieldTag::Q,
            AnyRealization::F2(_) => FieldTag::Fp(2),
            AnyRealization::F3(_) => FieldTag::Fp(3),
            AnyRealization::F5(_) => FieldTag::Fp(5),
            AnyRealization::F7(_) => FieldTag::Fp(7),
            AnyRealization::F11(_) => FieldTag::Fp(11),
            AnyRealization::F13(_) => FieldTag::Fp(13),
            AnyRealization::FBig(_) => FieldTag::Fp(2147483647),
        }
    }

    pub fn coxeter(&self) -> &CoxeterData {
        with_realization!(self, r => &r.coxeter)
    }

    pub fn to_doc(&self) -> RealizationDoc {
        let f = self.field();
        with_realization!(self, r => r.to_doc(f))
    }
}

/// Parse and validate a JSON realization document.
pub fn load_realization(json: &str) -> Result<AnyRealization, RealizationError> {
    let doc: RealizationDoc = serde_json::from_str(json).map_err(|e| RealizationError::Schema(e.to_string()))?;
    AnyRealization::from_doc(&doc)
}
