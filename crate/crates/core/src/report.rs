//! Check records shared by the verifiers and the CLI.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
}

/// Outcome of one verification, with the elements that failed (if any).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub params: Value,
    pub bound: Option<usize>,
    pub result: Verdict,
    pub witnesses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_ms: Option<u64>,
}

impl CheckRecord {
    pub fn new(check: impl Into<String>, params: Value, bound: Option<usize>, witnesses: Vec<String>) -> Self {
        let result = if witnesses.is_empty() { Verdict::Pass } else { Verdict::Fail };
        CheckRecord { check: check.into(), params, bound, result, witnesses, wall_ms: None }
    }

    /// A record whose verdict is decided by `ok`, with `witnesses` kept only on failure.
    pub fn from_bool(check: impl Into<String>, params: Value, bound: Option<usize>, ok: bool, witnesses: Vec<String>) -> Self {
        let mut r = CheckRecord::new(check, params, bound, Vec::new());
        if !ok {
            r.result = Verdict::Fail;
            r.witnesses = if witnesses.is_empty() { vec!["check returned false".into()] } else { witnesses };
        }
        r
    }

    pub fn skipped(check: impl Into<String>, params: Value, reason: impl Into<String>) -> Self {
        CheckRecord {
            check: check.into(),
            params,
            bound: None,
            result: Verdict::Skipped,
            witnesses: vec![reason.into()],
            wall_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.result == Verdict::Pass
    }
}
