//! Machine-readable certificates.
//!
//! A certificate records the digests of its inputs, one verdict per axiom
//! with reproducible witnesses, derived-structure payloads that downstream
//! commands can consume directly, and a summary. Serialization is
//! deterministic: struct order, sorted maps, exact scalars as strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use qgroupoid::report::Report;
use qgroupoid::scalar::render;

use crate::doc::{FieldDesc, InputDocument};

pub const SCHEMA: &str = "qgroupoid.certificate/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    pub command: String,
    pub field: FieldDesc,
    pub inputs: Vec<InputDigest>,
    pub checks: Vec<CheckDoc>,
    pub summary: Summary,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub data: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub derived: BTreeMap<String, InputDocument>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InputDigest {
    pub source: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckDoc {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witnesses: Vec<WitnessDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub indices: Vec<usize>,
    pub left: Vec<String>,
    pub right: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Certificate {
    pub fn new(command: &str, field: FieldDesc, inputs: Vec<InputDigest>) -> Self {
        Certificate {
            schema: SCHEMA.to_string(),
            command: command.to_string(),
            field,
            inputs,
            checks: Vec::new(),
            summary: Summary {
                total: 0,
                passed: 0,
                failed: 0,
            },
            data: BTreeMap::new(),
            derived: BTreeMap::new(),
        }
    }

    pub fn push_check(&mut self, check: CheckDoc) {
        self.checks.push(check);
    }

    pub fn push_failure(&mut self, name: impl Into<String>, detail: impl Into<String>) {
        self.checks.push(CheckDoc {
            name: name.into(),
            passed: false,
            detail: Some(detail.into()),
            witnesses: Vec::new(),
        });
    }

    /// Appends a whole report with every check name prefixed.
    pub fn absorb_report(&mut self, prefix: &str, report: &Report) {
        for check in &report.checks {
            let name = if prefix.is_empty() {
                check.name.clone()
            } else {
                format!("{prefix}.{}", check.name)
            };
            self.checks.push(CheckDoc {
                name,
                passed: check.passed,
                detail: None,
                witnesses: check
                    .witnesses
                    .iter()
                    .map(|w| WitnessDoc {
                        indices: w.indices.clone(),
                        left: w.left.iter().map(render).collect(),
                        right: w.right.iter().map(render).collect(),
                    })
                    .collect(),
            });
        }
    }

    pub fn set_data(&mut self, key: &str, value: serde_json::Value) {
        self.data.insert(key.to_string(), value);
    }

    pub fn embed(&mut self, key: &str, doc: InputDocument) {
        self.derived.insert(key.to_string(), doc);
    }

    /// Fills the summary; call once after all checks are recorded.
    pub fn finalize(mut self) -> Self {
        let passed = self.checks.iter().filter(|c| c.passed).count();
        self.summary = Summary {
            total: self.checks.len(),
            passed,
            failed: self.checks.len() - passed,
        };
        self
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("certificates serialize");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# {} — {}\n", self.command, field_name(&self.field)));
        for input in &self.inputs {
            out.push_str(&format!("input {} sha256:{}\n", input.source, input.sha256));
        }
        for check in &self.checks {
            if check.passed {
                out.push_str(&format!("PASS {}\n", check.name));
            } else {
                out.push_str(&format!("FAIL {}", check.name));
                if let Some(detail) = &check.detail {
                    out.push_str(&format!(" ({detail})"));
                }
                if let Some(w) = check.witnesses.first() {
                    out.push_str(&format!(
                        " witness@{:?} left={:?} right={:?}",
                        w.indices, w.left, w.right
                    ));
                    if check.witnesses.len() > 1 {
                        out.push_str(&format!(" (+{} more)", check.witnesses.len() - 1));
                    }
                }
                out.push('\n');
            }
        }
        for (key, value) in &self.data {
            out.push_str(&format!("data {key} = {value}\n"));
        }
        for key in self.derived.keys() {
            out.push_str(&format!("derived {key} (embedded in JSON format)\n"));
        }
        out.push_str(&format!(
            "summary {}/{} passed, {} failed\n",
            self.summary.passed, self.summary.total, self.summary.failed
        ));
        out
    }
}

fn field_name(field: &FieldDesc) -> String {
    match field {
        FieldDesc::Named(n) => n.clone(),
        FieldDesc::Prime { fp } => format!("F{fp}"),
    }
}
