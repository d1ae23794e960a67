use serde::Serialize;
use serde_json::{json, Value};

use crate::text;

/// Version of the structured report layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub seed: u64,
    pub result: Value,
    pub evidence: Value,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Value, seed: u64) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            inputs,
            seed,
            result: Value::Null,
            evidence: Value::Null,
            warnings: Vec::new(),
        }
    }

    /// Pretty JSON; identical inputs give identical bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self, elapsed_ms: Option<u128>) -> String {
        let mut out = format!("{}\n", self.command);
        out.push_str(&text::render(&json!({ "inputs": self.inputs, "seed": self.seed })));
        out.push_str("result:\n");
        let body = text::render(&self.result);
        for line in body.lines() {
            out.push_str(&format!("  {line}\n"));
        }
        if !self.evidence.is_null() {
            out.push_str("evidence:\n");
            for line in text::render(&self.evidence).lines() {
                out.push_str(&format!("  {line}\n"));
            }
        }
        if !self.warnings.is_empty() {
            out.push_str("warnings:\n");
            for w in &self.warnings {
                out.push_str(&format!("  - {w}\n"));
            }
        }
        if let Some(ms) = elapsed_ms {
            out.push_str(&format!("timing: {ms} ms\n"));
        }
        out
    }
}

/// Structured form of an error, for `--output structured`.
pub fn error_json(command: &str, err: &charcycle::Error) -> String {
    let kind = match err {
        charcycle::Error::Input(_) => "input",
        charcycle::Error::Parse { .. } => "parse",
        charcycle::Error::Precondition(_) => "precondition",
        charcycle::Error::UnsupportedFiber(_) => "unsupported-fiber",
        charcycle::Error::ComputationLimit { .. } => "computation-limit",
    };
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "error": { "kind": kind, "message": err.to_string(), "exit_code": err.exit_code() },
    });
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    s
}
