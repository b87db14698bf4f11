//! Versioned JSON reports.
//!
//! Every number a report states is a [`Claim`] naming the operation that
//! produced it and the tolerance it was compared with (`null` for exact
//! arithmetic). Every check is a [`Verdict`]. Reports contain nothing
//! time-dependent unless timing is requested, so they are reproducible byte
//! for byte from the same input and seed.

use serde::Serialize;
use serde_json::Value;

pub const REPORT_SCHEMA: &str = "qadeg.report/v1";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claim {
    pub name: String,
    pub operation: String,
    pub tolerance: Option<f64>,
    pub value: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub operation: String,
    pub tolerance: Option<f64>,
    pub pass: bool,
}

/// A failed verdict and whatever evidence the command attached to it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub name: String,
    pub evidence: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub tool_version: &'static str,
    pub command: String,
    pub input: Value,
    pub seed: Option<u64>,
    pub claims: Vec<Claim>,
    pub verdicts: Vec<Verdict>,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

fn to_value<T: Serialize>(value: T) -> Value {
    serde_json::to_value(value).expect("report values serialise")
}

impl Report {
    pub fn new(command: &str, input: impl Serialize, seed: Option<u64>) -> Self {
        Report {
            schema: REPORT_SCHEMA,
            tool_version: TOOL_VERSION,
            command: command.to_string(),
            input: to_value(input),
            seed,
            claims: Vec::new(),
            verdicts: Vec::new(),
            failures: Vec::new(),
            elapsed_ms: None,
        }
    }

    pub fn claim(&mut self, name: &str, operation: &str, tolerance: Option<f64>, value: impl Serialize) {
        self.claims.push(Claim {
            name: name.to_string(),
            operation: operation.to_string(),
            tolerance,
            value: to_value(value),
        });
    }

    /// Records a verdict; on failure `evidence` goes to the failure section.
    pub fn verdict(
        &mut self,
        name: &str,
        operation: &str,
        tolerance: Option<f64>,
        pass: bool,
        evidence: impl Serialize,
    ) {
        self.verdicts.push(Verdict {
            name: name.to_string(),
            operation: operation.to_string(),
            tolerance,
            pass,
        });
        if !pass {
            self.failures.push(Failure {
                name: name.to_string(),
                evidence: to_value(evidence),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn claim_value(&self, name: &str) -> Option<&Value> {
        self.claims.iter().find(|c| c.name == name).map(|c| &c.value)
    }

    pub fn verdict_pass(&self, name: &str) -> Option<bool> {
        self.verdicts.iter().find(|v| v.name == name).map(|v| v.pass)
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serialises");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_collect_evidence() {
        let mut r = Report::new("demo", serde_json::json!({"n": 2}), Some(0));
        r.claim("x", "demo.op", None, 3);
        r.verdict("ok", "demo.check", Some(1e-9), true, ());
        assert!(r.passed());
        r.verdict("bad", "demo.check", None, false, serde_json::json!({"value": 4}));
        assert!(!r.passed());
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.claim_value("x"), Some(&serde_json::json!(3)));
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["schema"], REPORT_SCHEMA);
        assert!(json.get("elapsed_ms").is_none());
    }
}
