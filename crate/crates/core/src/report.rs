//! Axiom-check reports with reproducible witnesses.
//!
//! Every checker in this crate returns a [`Report`]: one [`CheckResult`] per
//! axiom, in a fixed order, each failure carrying witnesses as basis-index
//! tuples plus the two vectors that should have been equal. Reports are
//! deterministic: the same input always yields the same report.

use crate::scalar::Scalar;

/// A single counterexample: which basis tuple failed and the two values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub left: Vec<Scalar>,
    pub right: Vec<Scalar>,
}

impl Witness {
    pub fn new(indices: Vec<usize>, left: Vec<Scalar>, right: Vec<Scalar>) -> Self {
        Witness {
            indices,
            left,
            right,
        }
    }
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<Witness>,
}

/// Ordered collection of axiom checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Self {
        Report { checks: Vec::new() }
    }

    /// Records one axiom; it passes exactly when there are no witnesses.
    pub fn record(&mut self, name: impl Into<String>, witnesses: Vec<Witness>) {
        self.checks.push(CheckResult {
            name: name.into(),
            passed: witnesses.is_empty(),
            witnesses,
        });
    }

    pub fn record_pass(&mut self, name: impl Into<String>) {
        self.record(name, Vec::new());
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_names(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name.clone())
            .collect()
    }

    /// Appends another report with every axiom name prefixed.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut check in other.checks {
            check.name = format!("{prefix}.{}", check.name);
            self.checks.push(check);
        }
    }
}
