//! Machine-readable run reports.
//!
//! A report is one command invocation: a list of checks, each with a stable
//! id, an anchor naming the statement or subsystem it certifies, an exact
//! residual in canonical text, and a timing. The overall verdict is `pass`
//! exactly when every non-skipped check passes. Text rendering omits the
//! timings so identical inputs produce byte-identical text output.

use serde::Serialize;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub residual: String,
    pub elapsed_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Payload a check closure produces; the runner adds id, anchor, timing.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub status: Status,
    pub residual: String,
    pub detail: Option<String>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome {
            status: Status::Pass,
            residual: "0".into(),
            detail: None,
        }
    }

    pub fn fail(residual: impl Into<String>) -> Self {
        Outcome {
            status: Status::Fail,
            residual: residual.into(),
            detail: None,
        }
    }

    /// Pass iff `residual` is the canonical zero text.
    pub fn from_residual(residual: impl Into<String>) -> Self {
        let residual = residual.into();
        Outcome {
            status: if residual == "0" {
                Status::Pass
            } else {
                Status::Fail
            },
            residual,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub checks: Vec<Check>,
    pub verdict: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            checks: Vec::new(),
            verdict: "pass".into(),
        }
    }

    /// Run a check closure, timing it and folding its status into the
    /// overall verdict.
    pub fn check(&mut self, id: &str, anchor: &str, f: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let outcome = f();
        let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
        if outcome.status == Status::Fail {
            self.verdict = "fail".into();
        }
        self.checks.push(Check {
            id: id.into(),
            anchor: anchor.into(),
            status: outcome.status,
            residual: outcome.residual,
            elapsed_ms,
            detail: outcome.detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        for check in &self.checks {
            let _ = writeln!(
                out,
                "{:<4}  {:<34}  anchor={:<24}  residual={}",
                check.status.label(),
                check.id,
                check.anchor,
                check.residual
            );
            if let Some(detail) = &check.detail {
                let _ = writeln!(out, "      {}", detail);
            }
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }
}
