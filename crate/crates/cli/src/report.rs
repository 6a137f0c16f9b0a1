//! The machine-readable report every command emits, and its text rendering.
//!
//! Keys are emitted in sorted order and integers outside the IEEE-754 safe
//! range become decimal strings, so any JSON consumer reads them exactly.
//! The text form walks the same JSON tree, which keeps the numbers in both
//! formats identical.

use std::fmt::Write as _;
use std::time::Instant;

use depthforge_core::constructions::Claim;
use depthforge_core::FieldSpec;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

pub const ENGINE_NAME: &str = "depthforge";
pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest integer a double represents exactly.
pub const MAX_SAFE_INTEGER: u64 = (1 << 53) - 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Engine {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldInfo {
    pub characteristic: u64,
    pub name: String,
}

impl From<FieldSpec> for FieldInfo {
    fn from(f: FieldSpec) -> Self {
        FieldInfo { characteristic: f.characteristic(), name: f.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
    /// The violated hypothesis, for rejected construction parameters.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inequality: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_us: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub engine: Engine,
    pub command: String,
    pub field: FieldInfo,
    pub inputs: Value,
    pub claims: Vec<Claim>,
    pub data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub timing: Timing,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, field: FieldSpec, inputs: Value) -> Report {
        Report {
            engine: Engine { name: ENGINE_NAME.into(), version: ENGINE_VERSION.into() },
            command: command.into(),
            field: field.into(),
            inputs,
            claims: Vec::new(),
            data: Value::Object(Map::new()),
            error: None,
            timing: Timing { elapsed_us: 0 },
            pass: true,
        }
    }

    /// Sets `pass` from the claims and records the time since `start`.
    pub fn finish(mut self, start: Instant) -> Report {
        self.pass = self.error.is_none() && self.claims.iter().all(|c| c.pass);
        self.timing.elapsed_us = start.elapsed().as_micros().try_into().unwrap_or(u64::MAX);
        self
    }

    pub fn to_value(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("reports contain only JSON-representable data");
        make_integers_safe(&mut v);
        v
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values always serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_text(&self.to_value(), 0, &mut out);
        out
    }
}

/// Replaces every integer above [`MAX_SAFE_INTEGER`] in magnitude by its
/// decimal string.
pub fn make_integers_safe(v: &mut Value) {
    match v {
        Value::Number(n) => {
            let unsafe_int = n.as_u64().map(|x| x > MAX_SAFE_INTEGER).unwrap_or(false)
                || n.as_i64().map(|x| x.unsigned_abs() > MAX_SAFE_INTEGER).unwrap_or(false);
            if unsafe_int {
                *v = Value::String(n.to_string());
            }
        }
        Value::Array(items) => items.iter_mut().for_each(make_integers_safe),
        Value::Object(map) => map.values_mut().for_each(make_integers_safe),
        _ => {}
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, item) in map {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{k}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_text(item, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}-");
                        render_text(item, indent + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other).unwrap_or_default());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn large_integers_become_strings() {
        let mut v = json!({"a": 9007199254740991u64, "b": 9007199254740992u64, "c": [-9007199254740993i64, 3]});
        make_integers_safe(&mut v);
        assert_eq!(v, json!({"a": 9007199254740991u64, "b": "9007199254740992", "c": ["-9007199254740993", 3]}));
    }

    #[test]
    fn keys_are_sorted_and_round_trip() {
        let mut r = Report::new("hilbert", FieldSpec::rational(), json!({"z": 1, "a": 2}));
        r.data = json!({"numerator": [1, 1, -1]});
        let r = r.finish(Instant::now());
        let text = r.to_json();
        assert!(text.find("\"command\"").unwrap() < text.find("\"engine\"").unwrap());
        assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
        assert_eq!(Report::from_json(&text).unwrap(), r);
    }

    #[test]
    fn text_rendering() {
        let mut r = Report::new("betti", FieldSpec::new(2).unwrap(), json!({"expression": "vars x ; x"}));
        r.data = json!({"totals": [1, 1], "rings": [{"dim": 1}]});
        let text = r.finish(Instant::now()).to_text();
        assert!(text.contains("totals: [1, 1]\n"));
        assert!(text.contains("rings:\n    -\n      dim: 1\n"));
        assert!(text.contains("name: GF(2)\n"));
    }
}
