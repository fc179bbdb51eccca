use std::fmt;

use serde::{Deserialize, Serialize};

/// One failed law instance together with the indices that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub law: String,
    pub witness: Vec<usize>,
    pub message: String,
}

/// Outcome of a law check. An empty violation list means the candidate passed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub subject: String,
    pub violations: Vec<Violation>,
    /// Informational remarks that do not count as failures (e.g. triviality).
    pub notes: Vec<String>,
}

impl LawReport {
    pub fn new(subject: impl Into<String>) -> Self {
        LawReport {
            subject: subject.into(),
            ..Default::default()
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violate(&mut self, law: &str, witness: Vec<usize>, message: impl Into<String>) {
        self.violations.push(Violation {
            law: law.to_string(),
            witness,
            message: message.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn has_law(&self, law: &str) -> bool {
        self.violations.iter().any(|v| v.law == law)
    }

    pub fn of_law<'a>(&'a self, law: &'a str) -> impl Iterator<Item = &'a Violation> + 'a {
        self.violations.iter().filter(move |v| v.law == law)
    }

    /// Folds another report into this one, prefixing its law names.
    pub fn absorb(&mut self, prefix: &str, other: LawReport) {
        for mut v in other.violations {
            v.law = format!("{prefix}{}", v.law);
            self.violations.push(v);
        }
        self.notes.extend(other.notes);
    }

    /// Turns a failing report into `Err(Error::Law)`.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::Error::Law(self))
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            write!(f, "{}: ok", self.subject)
        } else {
            write!(f, "{}: {} violation(s)", self.subject, self.violations.len())?;
            for v in self.violations.iter().take(8) {
                write!(f, "\n  {} {:?}: {}", v.law, v.witness, v.message)?;
            }
            if self.violations.len() > 8 {
                write!(f, "\n  ... {} more", self.violations.len() - 8)?;
            }
            Ok(())
        }
    }
}
