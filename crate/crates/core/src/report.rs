use std::fmt;

use serde::Serialize;

/// Outcome of a mechanical identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub checked: usize,
    /// Counterexamples, first one first; capped at [`CheckReport::MAX_FAILURES`].
    pub failures: Vec<String>,
    /// Anything the check could not cover.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub const MAX_FAILURES: usize = 20;

    pub fn new(check: &str) -> Self {
        CheckReport {
            check: check.to_string(),
            passed: true,
            checked: 0,
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// Records one comparison.
    pub fn expect(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < Self::MAX_FAILURES {
                self.failures.push(describe());
            }
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.passed &= other.passed;
        self.checked += other.checked;
        for f in other.failures {
            if self.failures.len() < Self::MAX_FAILURES {
                self.failures.push(format!("{}: {f}", other.check));
            }
        }
        self.notes.extend(other.notes);
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{}: {verdict} ({} comparisons)", self.check, self.checked)?;
        if let Some(first) = self.failures.first() {
            write!(f, "\n  first counterexample: {first}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}
