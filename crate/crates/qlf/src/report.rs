//! Structured run reports emitted by every CLI command.
//!
//! Reports serialize deterministically: object keys are sorted (serde_json
//! maps are BTree-backed) and all high-precision values are rendered as
//! decimal strings by a fixed-digit algorithm, so re-running a command with
//! identical inputs in sequential mode yields byte-identical numeric
//! payloads. `wall_time_ms` is timing metadata, not part of that contract.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use crate::numeric::{real_to_decimal, HPComplex, HPReal};

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub artifact_version: String,
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub backend: String,
    pub precision_bits: u32,
    pub wall_time_ms: u64,
    pub results: Value,
    pub residuals: BTreeMap<String, Value>,
    pub truncation: BTreeMap<String, Value>,
}

impl RunReport {
    pub fn new(command: &str, backend: &str, precision_bits: u32) -> Self {
        RunReport {
            artifact_version: crate::ARTIFACT_VERSION.to_string(),
            command: command.to_string(),
            parameters: BTreeMap::new(),
            backend: backend.to_string(),
            precision_bits,
            wall_time_ms: 0,
            results: Value::Null,
            residuals: BTreeMap::new(),
            truncation: BTreeMap::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn residual(&mut self, key: &str, value: f64) -> &mut Self {
        self.residuals.insert(key.to_string(), json!(value));
        self
    }

    pub fn truncation_note(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.truncation.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialization");
        s.push('\n');
        s
    }
}

/// {re, im} with full-precision decimal strings.
pub fn complex_json(v: &HPComplex) -> Value {
    json!({
        "re": real_to_decimal(&v.re),
        "im": real_to_decimal(&v.im),
    })
}

pub fn real_json(v: &HPReal) -> Value {
    json!(real_to_decimal(v))
}

/// A tabular payload: CSV rendering for --format csv.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table {
            headers: headers.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.headers.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}
