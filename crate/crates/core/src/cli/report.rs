use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::report::{LawReport, Violation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    VerifiedToTruncation,
    ResourceSkipped,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::VerifiedToTruncation => "verified-to-truncation",
            Status::ResourceSkipped => "resource-skipped",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verified {
    Full,
    Truncated,
}

/// One line of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    /// Only set on passes; a truncated pass is never `full`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<Verified>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Violation>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Check {
    pub fn pass(id: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::Pass, verified: Some(Verified::Full), witness: None, notes: vec![] }
    }

    pub fn truncated(id: impl Into<String>, params: impl Into<String>) -> Self {
        Check {
            id: id.into(),
            status: Status::VerifiedToTruncation,
            verified: Some(Verified::Truncated),
            witness: None,
            notes: vec![params.into()],
        }
    }

    pub fn fail(id: impl Into<String>, witness: Violation) -> Self {
        Check { id: id.into(), status: Status::Fail, verified: None, witness: Some(witness), notes: vec![] }
    }

    pub fn fail_msg(id: impl Into<String>, law: &str, message: impl Into<String>) -> Self {
        Self::fail(id, Violation { law: law.into(), witness: vec![], message: message.into() })
    }

    pub fn skipped(id: impl Into<String>, guard: impl Into<String>) -> Self {
        Check { id: id.into(), status: Status::ResourceSkipped, verified: None, witness: None, notes: vec![guard.into()] }
    }

    /// Pass or fail from a law report; `truncation` marks a bounded check.
    pub fn from_report(id: impl Into<String>, report: &LawReport, truncation: Option<String>) -> Self {
        let id = id.into();
        let mut check = match (report.violations.first(), truncation) {
            (Some(v), _) => {
                let mut c = Check::fail(id, v.clone());
                if report.violations.len() > 1 {
                    c.notes.push(format!("{} violations in total", report.violations.len()));
                }
                c
            }
            (None, Some(t)) => {
                let mut c = Check::truncated(id, t.clone());
                if report.notes.iter().any(|n| n.contains(&t)) {
                    c.notes.clear();
                }
                c
            }
            (None, None) => Check::pass(id),
        };
        check.notes.extend(report.notes.iter().cloned());
        check
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

/// What a command prints. Timing is kept out so that equal inputs give equal
/// bytes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<Value>,
    pub exit_code: i32,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        RunReport { command: command.into(), seed: None, checks: vec![], artifact: None, exit_code: 0 }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Sorts by id and sets the exit code: 1 on any failure, else 3 on any
    /// skipped guard, else 0.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self.exit_code = if self.checks.iter().any(Check::is_fail) {
            1
        } else if self.checks.iter().any(|c| c.status == Status::ResourceSkipped) {
            3
        } else {
            0
        };
        self
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("$ qlab {}\n", self.command);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let width = self.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(0);
        for c in &self.checks {
            let verified = match c.verified {
                Some(Verified::Full) => " [full]",
                Some(Verified::Truncated) => " [truncated]",
                None => "",
            };
            let _ = writeln!(out, "{:<22} {:<width$}{verified}", c.status.label(), c.id);
            if let Some(w) = &c.witness {
                let _ = writeln!(out, "    witness: {} {:?}: {}", w.law, w.witness, w.message);
            }
            for n in &c.notes {
                let _ = writeln!(out, "    {n}");
            }
        }
        if let Some(a) = &self.artifact {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(a).expect("artifact serializes"));
        }
        let _ = writeln!(out, "exit: {}", self.exit_code);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_and_order() {
        let mut r = RunReport::new("x");
        r.push(Check::pass("b"));
        r.push(Check::truncated("a", "N = 3"));
        let r = r.finish();
        assert_eq!(r.exit_code, 0);
        assert_eq!(r.checks[0].id, "a");
        assert!(r.to_json().contains("\"verified\": \"truncated\""));

        let mut r = RunReport::new("x");
        r.push(Check::skipped("a", "guard"));
        assert_eq!(r.clone().finish().exit_code, 3);
        r.push(Check::fail_msg("b", "law", "m"));
        assert_eq!(r.finish().exit_code, 1);
    }

    #[test]
    fn failing_report_keeps_first_witness() {
        let mut lr = LawReport::new("s");
        lr.violate("unit", vec![2], "m");
        lr.violate("unit", vec![3], "m");
        let c = Check::from_report("id", &lr, Some("N = 2".into()));
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.witness.unwrap().witness, vec![2]);
        assert_eq!(c.verified, None);
    }
}
