//! Pass/fail reports carrying concrete witnesses.

use std::fmt;

use crate::linalg::Vector;
use crate::scalar::Scalar;

/// The offending value found at a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Residual {
    Scalar(Scalar),
    Vector(Vector),
}

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Residual::Scalar(s) => write!(f, "{s}"),
            Residual::Vector(v) => write!(f, "{v}"),
        }
    }
}

/// Basis tuple (0-based indices into whatever basis the check ranges over)
/// and the nonzero value observed there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub basis: Vec<usize>,
    pub residual: Residual,
}

impl Witness {
    pub fn new(basis: Vec<usize>, residual: Residual) -> Self {
        Witness { basis, residual }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
    pub note: Option<String>,
}

/// Ordered list of named checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check that passed iff `witness` is `None`.
    pub fn record(&mut self, name: &str, witness: Option<Witness>) {
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed: witness.is_none(),
            witness,
            note: None,
        });
    }

    /// Records a check with a free-form note instead of a witness.
    pub fn record_note(&mut self, name: &str, passed: bool, note: impl Into<String>) {
        self.checks.push(CheckOutcome {
            name: name.to_string(),
            passed,
            witness: None,
            note: Some(note.into()),
        });
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn checks(&self) -> &[CheckOutcome] {
        &self.checks
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(f, "{}: {}", c.name, if c.passed { "pass" } else { "FAIL" })?;
            if let Some(w) = &c.witness {
                let idx: Vec<String> = w.basis.iter().map(|i| (i + 1).to_string()).collect();
                write!(f, " at ({}) value {}", idx.join(","), w.residual)?;
            }
            if let Some(n) = &c.note {
                write!(f, " [{n}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
