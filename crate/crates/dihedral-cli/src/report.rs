//! The report record and its rendering.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Holds after a recorded sign or transcription correction.
    Reconciled,
}

impl Status {
    pub fn ok(self) -> bool {
        self != Status::Fail
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Reconciled => "reconciled",
        }
    }
}

/// One executed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub id: String,
    /// Parameter name to exact rational `p/q` (`sym` when kept symbolic).
    pub params: BTreeMap<String, String>,
    pub status: Status,
    /// `"0"` for exact identities that hold, otherwise a count or a decimal
    /// magnitude in fixed notation.
    pub residual: String,
    pub notes: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

impl CheckReport {
    /// Sort key: id, then the parameters in lexicographic order.
    pub fn key(&self) -> (String, Vec<(String, String)>) {
        (self.id.clone(), self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect())
    }

    /// One human-readable line.
    pub fn line(&self) -> String {
        let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let mut s = format!("{:<10} {:<18} [{}] residual={}", self.status.as_str(), self.id, params.join(" "), self.residual);
        if !self.notes.is_empty() {
            s.push_str("\n           ");
            s.push_str(&self.notes.replace('\n', "\n           "));
        }
        s
    }
}

/// Deterministic order, independent of completion order.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by_key(|a| a.key());
}

/// `0` iff every status is pass or reconciled.
pub fn exit_code(reports: &[CheckReport]) -> i32 {
    if reports.iter().all(|r| r.status.ok()) {
        0
    } else {
        1
    }
}

/// Fixed-precision decimal, so that reports are byte-stable.
pub fn fixed(x: f64) -> String {
    if x == 0.0 {
        "0.000000e0".into()
    } else {
        format!("{x:.6e}")
    }
}

pub fn to_json(reports: &[CheckReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

/// Exact residual: `"0"` or how many of the identities fail.
pub fn exact_residual(failures: usize, total: usize) -> String {
    if failures == 0 {
        "0".into()
    } else {
        format!("nonzero ({failures} of {total})")
    }
}
