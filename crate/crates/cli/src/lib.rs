//! Command-line front end: argument parsing, realization loading, the Hecke, Schubert and
//! bimodule commands, and the verification suites behind `sbim verify`.
//!
//! Every command prints one JSON document (or a text rendering with `--output text`).
//! Exit status is 0 on success, 1 on a domain error or a failed verification, 2 on a usage
//! error. Domain errors carry the originating module's error name.

pub mod args;
mod commands;
pub mod context;
pub mod error;
pub mod report;
pub mod verify;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Cmd, Output};
use error::CliError;

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A command result in both output formats.
pub struct Rendered {
    pub json: Value,
    pub text: String,
    /// Exit status for successful runs (verification failures exit with 1).
    pub code: i32,
}

impl Rendered {
    pub fn json(json: Value) -> Self {
        let text = pretty(&json);
        Rendered { json, text, code: 0 }
    }

    pub fn with_text(json: Value, text: String) -> Self {
        Rendered { json, text, code: 0 }
    }
}

pub(crate) fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

/// Run the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            // Help and version requests succeed; everything else is a usage error.
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let output = cli.common.output;
    match dispatch(&cli) {
        Ok(r) => {
            let body = match output {
                Output::Json => pretty(&r.json),
                Output::Text => r.text,
            };
            Outcome { code: r.code, stdout: format!("{}\n", body.trim_end()), stderr: String::new() }
        }
        Err(e) => {
            let code = e.exit_code();
            let mut stderr = format!("error[{}]: {}\n", e.code(), e);
            if let CliError::Usage(_) = e {
                stderr.push_str("run `sbim --help` for the command schema\n");
            }
            let stdout = match output {
                Output::Json => format!("{}\n", pretty(&json!({"error": {"code": e.code(), "message": e.to_string()}}))),
                Output::Text => String::new(),
            };
            Outcome { code, stdout, stderr }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Rendered, CliError> {
    let common = &cli.common;
    if let Cmd::Verify { suite } = &cli.cmd {
        return verify::run_suite(common, *suite);
    }
    let any = context::load(common)?;
    let field = any.field();
    sbim_realization::with_realization!(any, real => commands::run(&cli.cmd, common, field, real))
}
