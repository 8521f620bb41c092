//! Realization loading and argument helpers shared by the commands.

use std::sync::Arc;

use sbim_algebra::poly::default_names;
use sbim_algebra::{Field, Poly};
use sbim_bimod::Engine;
use sbim_coxeter::{CoxeterGroup, Subset};
use sbim_realization::{load_realization, parse_field_name, AnyRealization, Realization};
use sbim_schubert::Schubert;

use crate::args::Common;
use crate::error::CliError;

/// The realization named by `--preset`/`--realization`, over `--field` when given.
pub fn load(common: &Common) -> Result<AnyRealization, CliError> {
    let any = match (&common.preset, &common.realization) {
        (Some(_), Some(_)) => return Err(CliError::usage("give either --preset or --realization, not both")),
        (None, None) => return Err(CliError::usage("a realization is required: --preset NAME or --realization FILE")),
        (Some(p), None) => {
            let field = match &common.field {
                Some(f) => parse_field_name(f)?,
                None => sbim_realization::FieldTag::Q,
            };
            AnyRealization::preset(p, field)?
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
            let any = load_realization(&text)?;
            match &common.field {
                Some(f) => AnyRealization::from_doc_with_field(&any.to_doc(), parse_field_name(f)?)?,
                None => any,
            }
        }
    };
    Ok(any)
}

/// Group, Schubert calculus and bimodule engine over one realization.
pub struct Ctx<F: Field> {
    pub common: Common,
    pub sch: Arc<Schubert<F>>,
    pub engine: Engine<F>,
}

impl<F: Field> Ctx<F> {
    pub fn new(common: &Common, real: Realization<F>) -> Result<Self, CliError> {
        let group = match common.length_bound {
            Some(b) => CoxeterGroup::with_length_bound(real.coxeter.clone(), b)?,
            None => CoxeterGroup::new(real.coxeter.clone())?,
        };
        let sch = Arc::new(Schubert::new(real, Arc::new(group)));
        let mut engine = Engine::new(sch.clone());
        if let Some(d) = common.degree_bound {
            if d <= 0 {
                return Err(CliError::usage("--degree-bound must be positive"));
            }
            engine.degree_cap = d;
        }
        Ok(Ctx { common: common.clone(), sch, engine })
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.sch.group
    }

    /// `--s1`, `--s2` or `--s3`; absent means the empty subset.
    pub fn subset(&self, which: usize) -> Result<Subset, CliError> {
        let raw = match which {
            1 => &self.common.s1,
            2 => &self.common.s2,
            _ => &self.common.s3,
        };
        match raw {
            None => Ok(Subset::empty()),
            Some(s) => self.group().parse_subset(s).map_err(|e| CliError::usage(e.to_string())),
        }
    }

    /// `--s1` and `--s2` for commands that need a finitary subset pair.
    pub fn pair(&self) -> Result<(Subset, Subset), CliError> {
        let (s1, s2) = (self.subset(1)?, self.subset(2)?);
        self.group().parabolic(s1)?;
        self.group().parabolic(s2)?;
        Ok((s1, s2))
    }

    /// A polynomial in the variables `e1, …, en`.
    pub fn poly(&self, s: &str) -> Result<Poly<F>, CliError> {
        let n = self.sch.nvars();
        Poly::parse(n, &default_names(n), s)
            .ok_or_else(|| CliError::usage(format!("cannot parse polynomial {s:?} in variables e1..e{n}")))
    }
}
