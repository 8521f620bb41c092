//! The acceptance run: every criterion on its fixed presets, one line per criterion.
//! Exits non-zero if any criterion fails.

use sbim_cli::args::DEFAULT_SEED;
use sbim_cli::report::Status;
use sbim_cli::verify::{criteria, run_acceptance};

fn main() {
    let report = run_acceptance(DEFAULT_SEED);
    assert_eq!(report.checks.len(), criteria().len(), "one check per criterion");
    for c in &report.checks {
        let mut line = format!("{:<4} {}", if c.status == Status::Pass { "pass" } else { "FAIL" }, c.name);
        if c.status != Status::Pass {
            line.push_str(&format!(": {}", c.detail));
        }
        println!("{line}");
    }
    let (pass, fail, skip) = report.counts();
    println!("acceptance: {pass} passed, {fail} failed, {skip} skipped");
    if !report.passed() || skip > 0 {
        std::process::exit(1);
    }
}
