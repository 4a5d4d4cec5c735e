//! Machine-readable run reports: one named check per verified identity, with
//! the symbolic witness (a discrepancy that must print as `0` on a pass).

use serde::Serialize;

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: String,
    pub witness: String,
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub data: serde_json::Value,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: "pass".into(),
            witness: "0".into(),
            data: serde_json::Value::Null,
        }
    }

    pub fn of(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            verdict: if ok { "pass" } else { "fail" }.into(),
            witness: witness.into(),
            data: serde_json::Value::Null,
        }
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = data;
        self
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: String,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, checks: Vec<Check>, elapsed_ms: u64) -> Self {
        let verdict = if checks.iter().all(|c| c.verdict == "pass") {
            "pass"
        } else {
            "fail"
        };
        Report {
            command: command.into(),
            verdict: verdict.into(),
            checks,
            elapsed_ms,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
