//! Machine-readable run reports.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CheckRecord {
    pub suite: String,
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    pub residual_is_zero: bool,
    pub residual_sample: String,
    /// Set when the check could not be evaluated; such a check counts as failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub runtime_ms: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Environment {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub c: String,
    pub signature: String,
    pub chains: Vec<BTreeMap<String, serde_json::Value>>,
    pub split: usize,
    pub suites: Vec<String>,
    pub campaigns: usize,
    pub caps: BTreeMap<String, usize>,
    pub overrides: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Summary {
    pub checks: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub environment: Environment,
    /// `"+1"` or `"-1"` once the gl(1|2) suite has resolved it.
    pub sign_convention: Option<String>,
    pub summary: Summary,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn all_zero(&self) -> bool {
        self.checks.iter().all(|c| c.residual_is_zero)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.residual_is_zero)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn emit_report(report: &Report, path: &Path) -> std::io::Result<()> {
    let mut text = report.to_json();
    text.push('\n');
    std::fs::write(path, text)
}
