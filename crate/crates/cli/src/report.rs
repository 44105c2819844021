//! JSON verification report.

use std::collections::BTreeMap;

use dunkl_core::Check;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub anchor: String,
    /// `"pass"` or `"fail"`.
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finding: Option<String>,
}

impl From<&Check> for CheckRecord {
    fn from(c: &Check) -> Self {
        CheckRecord {
            name: c.name.clone(),
            anchor: c.anchor.clone(),
            status: if c.passed { "pass" } else { "fail" }.into(),
            witness: c.witness.clone(),
            finding: c.finding.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: String,
    pub params: BTreeMap<String, String>,
    pub horizon: usize,
    pub checks: Vec<CheckRecord>,
    pub version: String,
    /// Wall time per suite in milliseconds. Not part of the data payload.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, u128>>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == "pass")
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
