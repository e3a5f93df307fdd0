//! Check outcomes and their text and structured renderings.
//!
//! The structured form is a JSON object:
//!
//! ```text
//! {
//!   "format": "gysin-report/1",
//!   "source": "<path, '-' for standard input, or the command>",
//!   "checks": [
//!     { "index": 0, "check": "check-exact", "target": "ls",
//!       "status": "pass" | "fail" | "structural-error",
//!       "summary": "...", "details": { ... }, "seconds": 0.01 }
//!   ],
//!   "error": { "class": "...", "message": "..." },
//!   "summary": { "passed": 1, "failed": 0, "structural_errors": 0, "exit_code": 0 }
//! }
//! ```
//!
//! `error` appears only when the input could not be loaded, and `seconds`
//! only when timings were requested, so that reports are identical across
//! runs by default.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::LoadError;

pub const REPORT_FORMAT: &str = "gysin-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    StructuralError,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::StructuralError => "ERROR",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub index: usize,
    pub check: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
    pub status: Status,
    pub summary: String,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoadFailure {
    pub class: &'static str,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub passed: usize,
    pub failed: usize,
    pub structural_errors: usize,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub format: &'static str,
    pub source: String,
    pub checks: Vec<CheckOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<LoadFailure>,
    pub summary: Summary,
}

impl Report {
    pub fn new(source: impl Into<String>, checks: Vec<CheckOutcome>) -> Self {
        let count = |s: Status| checks.iter().filter(|c| c.status == s).count();
        let (passed, failed, structural_errors) =
            (count(Status::Pass), count(Status::Fail), count(Status::StructuralError));
        let exit_code = if structural_errors > 0 {
            2
        } else if failed > 0 {
            1
        } else {
            0
        };
        Report {
            format: REPORT_FORMAT,
            source: source.into(),
            checks,
            error: None,
            summary: Summary {
                passed,
                failed,
                structural_errors,
                exit_code,
            },
        }
    }

    pub fn load_failure(source: impl Into<String>, e: &LoadError) -> Self {
        Report {
            format: REPORT_FORMAT,
            source: source.into(),
            checks: Vec::new(),
            error: Some(LoadFailure {
                class: e.class(),
                message: e.to_string(),
            }),
            summary: Summary {
                passed: 0,
                failed: 0,
                structural_errors: 0,
                exit_code: 2,
            },
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(e) = &self.error {
            let _ = writeln!(out, "{}: {}", self.source, e.message);
            return out;
        }
        for c in &self.checks {
            let target = c.target.as_deref().map(|t| format!(" {t}")).unwrap_or_default();
            let time = c.seconds.map(|s| format!(" ({s:.3}s)")).unwrap_or_default();
            let _ = writeln!(
                out,
                "[{}] #{} {}{}: {}{}",
                c.status.label(),
                c.index,
                c.check,
                target,
                c.summary,
                time
            );
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} structural errors",
            s.passed, s.failed, s.structural_errors
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(status: Status) -> CheckOutcome {
        CheckOutcome {
            index: 0,
            check: "check-exact".into(),
            target: Some("x".into()),
            status,
            summary: String::new(),
            details: Value::Null,
            seconds: None,
        }
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Report::new("t", vec![]).exit_code(), 0);
        assert_eq!(Report::new("t", vec![outcome(Status::Pass)]).exit_code(), 0);
        assert_eq!(Report::new("t", vec![outcome(Status::Pass), outcome(Status::Fail)]).exit_code(), 1);
        let mixed = vec![outcome(Status::Fail), outcome(Status::StructuralError)];
        assert_eq!(Report::new("t", mixed).exit_code(), 2);
    }

    #[test]
    fn structured_field_names() {
        let json: Value = serde_json::from_str(&Report::new("t", vec![outcome(Status::StructuralError)]).to_json()).unwrap();
        assert_eq!(json["format"], REPORT_FORMAT);
        assert_eq!(json["checks"][0]["status"], "structural-error");
        assert!(json["checks"][0].get("seconds").is_none());
        assert_eq!(json["summary"]["structural_errors"], 1);
    }
}
