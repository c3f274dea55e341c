//! Report envelope and its two renderings.
//!
//! JSON schema (all commands):
//!
//! ```text
//! {
//!   "command":   string, the subcommand and its positional arguments
//!   "version":   string, crate version
//!   "status":    "ok" | "violated" | "incomplete"
//!   "inputs":    object, resolved inputs (families, sizes, seed, budget)
//!   "outcome":   object, command specific payload
//!   "timing_ms": number, only with --timing
//! }
//! ```
//!
//! The text rendering flattens the same tree into `dotted.key: value` lines;
//! arrays print as compact JSON.

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violated,
    Incomplete,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Violated => 1,
            Status::Incomplete => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub version: &'static str,
    pub status: Status,
    pub inputs: Value,
    pub outcome: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl Report {
    pub fn new(command: String, status: Status, inputs: Value, outcome: Value) -> Self {
        Report {
            command,
            version: env!("CARGO_PKG_VERSION"),
            status,
            inputs,
            outcome,
            timing_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// `key: value` lines, each prefixed with `prefix`.
    pub fn to_text(&self, prefix: &str) -> String {
        let tree = serde_json::to_value(self).expect("report serializes");
        let mut out = String::new();
        flatten(prefix, "", &tree, &mut out);
        out
    }
}

fn flatten(prefix: &str, key: &str, value: &Value, out: &mut String) {
    match value {
        Value::Object(map) => flatten_object(prefix, key, map, out),
        Value::String(s) => out.push_str(&format!("{prefix}{key}: {s}\n")),
        other => out.push_str(&format!("{prefix}{key}: {other}\n")),
    }
}

fn flatten_object(prefix: &str, key: &str, map: &Map<String, Value>, out: &mut String) {
    if map.is_empty() {
        out.push_str(&format!("{prefix}{key}: {{}}\n"));
    }
    for (k, v) in map {
        let path = if key.is_empty() { k.clone() } else { format!("{key}.{k}") };
        flatten(prefix, &path, v, out);
    }
}
