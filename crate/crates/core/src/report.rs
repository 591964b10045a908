use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::groups::Degree;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Where a check failed: the offending degrees (or indices) and what broke.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub at: Vec<Degree>,
    pub reason: String,
}

impl Witness {
    pub fn new(at: impl Into<Vec<Degree>>, reason: impl Into<String>) -> Witness {
        Witness {
            at: at.into(),
            reason: reason.into(),
        }
    }
}

/// Outcome of a verification. Composite checks nest their sub-checks in
/// `parts`; a composite passes iff every part passes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Set when an infinite quantifier was only checked on a finite window.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub window_verified: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Report>,
}

impl Report {
    pub fn pass(check: impl Into<String>) -> Report {
        Report {
            check: check.into(),
            status: Status::Pass,
            witness: None,
            window_verified: false,
            notes: Vec::new(),
            parts: Vec::new(),
        }
    }

    pub fn fail(check: impl Into<String>, witness: Witness) -> Report {
        Report {
            status: Status::Fail,
            witness: Some(witness),
            ..Report::pass(check)
        }
    }

    /// Pass when `failure` is `None`, otherwise fail with that witness.
    pub fn from_failure(check: impl Into<String>, failure: Option<Witness>) -> Report {
        match failure {
            None => Report::pass(check),
            Some(w) => Report::fail(check, w),
        }
    }

    /// A composite report. The first failing part supplies the witness.
    pub fn all(check: impl Into<String>, parts: Vec<Report>) -> Report {
        let failed = parts.iter().find(|p| !p.passed());
        let mut r = match failed {
            None => Report::pass(check),
            Some(p) => Report::fail(
                check,
                p.witness.clone().unwrap_or_else(|| Witness::new([], p.check.clone())),
            ),
        };
        r.window_verified = parts.iter().any(|p| p.window_verified);
        r.parts = parts;
        r
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn windowed(mut self, flag: bool) -> Report {
        self.window_verified |= flag;
        self
    }

    pub fn renamed(mut self, check: impl Into<String>) -> Report {
        self.check = check.into();
        self
    }

    pub fn note(mut self, note: impl Into<String>) -> Report {
        self.notes.push(note.into());
        self
    }

    fn write_indented(&self, f: &mut fmt::Formatter<'_>, depth: usize) -> fmt::Result {
        let pad = "  ".repeat(depth);
        let status = match self.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
        };
        write!(f, "{pad}{}: {status}", self.check)?;
        if self.window_verified {
            write!(f, " (window-verified)")?;
        }
        if let Some(w) = &self.witness {
            let at: Vec<String> = w.at.iter().map(ToString::to_string).collect();
            write!(f, " at ({}): {}", at.join(","), w.reason)?;
        }
        writeln!(f)?;
        for n in &self.notes {
            writeln!(f, "{pad}  {n}")?;
        }
        for p in &self.parts {
            p.write_indented(f, depth + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_indented(f, 0)
    }
}

/// Runs `probe` over `items` in parallel and returns the failure belonging
/// to the earliest item, so witnesses do not depend on scheduling.
pub(crate) fn first_failure<T, F>(items: &[T], probe: F) -> Option<Witness>
where
    T: Sync,
    F: Fn(&T) -> Option<Witness> + Sync + Send,
{
    items.par_iter().find_map_first(probe)
}
