//! Verification reports: one entry per check with its status, a witness on failure and,
//! on request, its running time.

use std::fmt;
use std::time::Instant;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// A failed check: a description of the counterexample.
#[derive(Debug)]
pub struct Failure(pub String);

impl<E: fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

pub type CheckResult = Result<Value, Failure>;

/// Return a failure with a formatted witness unless the condition holds.
#[macro_export]
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err($crate::report::Failure(format!($($fmt)+)));
        }
    };
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// Counts on success, the witness on failure, the reason when skipped.
    pub detail: Value,
    pub millis: u128,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub target: String,
    pub seed: u64,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: &str, target: &str, seed: u64) -> Self {
        Report { suite: suite.into(), target: target.into(), seed, checks: Vec::new() }
    }

    /// Overall status: pass iff every non-skipped check passes.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    /// Run `f` and record its outcome under `name`.
    pub fn run(&mut self, name: &str, f: impl FnOnce() -> CheckResult) {
        self.checks.push(timed(name, f));
    }

    pub fn skip(&mut self, name: &str, reason: Value) {
        self.checks.push(Check { name: name.into(), status: Status::Skipped, detail: reason, millis: 0 });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self, timings: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({"name": c.name, "status": c.status.to_string(), "detail": c.detail});
                if timings {
                    v["millis"] = json!(c.millis as u64);
                }
                v
            })
            .collect();
        json!({
            "suite": self.suite,
            "target": self.target,
            "seed": format!("{:#x}", self.seed),
            "status": if self.passed() { "pass" } else { "fail" },
            "checks": checks,
        })
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = format!("suite {} on {} (seed {:#x})\n", self.suite, self.target, self.seed);
        for c in &self.checks {
            let mut line = format!("{:<7} {}", c.status.to_string(), c.name);
            if timings {
                line.push_str(&format!(" [{} ms]", c.millis));
            }
            if c.status != Status::Pass {
                line.push_str(&format!(": {}", c.detail));
            }
            out.push_str(&line);
            out.push('\n');
        }
        let (pass, fail, skip) = self.counts();
        out.push_str(&format!(
            "{}: {pass} passed, {fail} failed, {skip} skipped",
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let n = |s| self.checks.iter().filter(|c| c.status == s).count();
        (n(Status::Pass), n(Status::Fail), n(Status::Skipped))
    }
}

/// Run a check, turning panics into failures so that one broken check does not hide others.
pub fn timed(name: &str, f: impl FnOnce() -> CheckResult) -> Check {
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(f));
    let millis = start.elapsed().as_millis();
    let (status, detail) = match outcome {
        Ok(Ok(v)) => (Status::Pass, v),
        Ok(Err(Failure(w))) => (Status::Fail, json!({ "witness": w })),
        Err(p) => {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (Status::Fail, json!({ "witness": format!("panicked: {msg}") }))
        }
    };
    Check { name: name.into(), status, detail, millis }
}
