//! Verification suites. Module suites check the invariants of each layer on the chosen
//! realization; the acceptance suite runs the acceptance criteria on fixed presets.
//!
//! Every randomized check draws from a ChaCha8 stream seeded by `--seed`, so reports are
//! byte-stable for fixed inputs (timings are only included with `--timings`).

mod acceptance;
mod modules;
mod util;

use sbim_realization::{with_realization, AnyRealization};

use crate::args::{Common, Suite};
use crate::context;
use crate::error::CliError;
use crate::report::Report;
use crate::Rendered;

pub use acceptance::{criteria, run_acceptance};

/// Run `suite` and render its report; a failed check makes the exit status 1.
pub fn run_suite(common: &Common, suite: Suite) -> Result<Rendered, CliError> {
    let report = match suite {
        Suite::Acceptance => run_acceptance(common.seed),
        _ => {
            let any = context::load(common)?;
            let target = describe(common, &any);
            with_realization!(any, real => modules::run(common, suite, &target, real))?
        }
    };
    Ok(render(&report, common.timings))
}

pub fn render(report: &Report, timings: bool) -> Rendered {
    let mut r = Rendered::with_text(report.to_json(timings), report.to_text(timings));
    r.code = if report.passed() { 0 } else { 1 };
    r
}

fn describe(common: &Common, any: &AnyRealization) -> String {
    let source = match (&common.preset, &common.realization) {
        (Some(p), _) => p.clone(),
        (None, Some(path)) => path.display().to_string(),
        (None, None) => "?".into(),
    };
    format!("{source} over {}", any.field())
}
