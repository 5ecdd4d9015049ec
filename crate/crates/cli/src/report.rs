//! Deterministic run reports. Everything written to stdout is a pure
//! function of the command and its inputs; timing and worker counts go to
//! stderr.

use serde_json::{json, Map, Value};

pub const SCHEMA: &str = "adjinv.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub struct Report {
    command: String,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    /// Results too bulky for the text format.
    bulky: Map<String, Value>,
    /// Set when a verification ran to completion but found a discrepancy.
    pub failed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), inputs: Map::new(), results: Map::new(), bulky: Map::new(), failed: false }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.results.insert(key.to_string(), value.into());
        self
    }

    pub fn json_only(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.bulky.insert(key.to_string(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut results = self.results.clone();
        results.extend(self.bulky.clone());
        json!({
            "schema": SCHEMA,
            "command": self.command,
            "inputs": self.inputs,
            "results": results,
            "status": if self.failed { "failed" } else { "ok" },
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut s = format!("command: {}\n", self.command);
                for (k, v) in &self.inputs {
                    s += &format!("  {k} = {}\n", text(v));
                }
                for (k, v) in &self.results {
                    match v {
                        Value::Array(items) if items.iter().all(|x| x.is_object() || x.is_array()) && !items.is_empty() => {
                            s += &format!("{k}:\n");
                            for item in items {
                                s += &format!("  {}\n", text(item));
                            }
                        }
                        _ => s += &format!("{k}: {}\n", text(v)),
                    }
                }
                if self.failed {
                    s += "status: failed\n";
                }
                s
            }
        }
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", text(v))).collect();
            parts.join(" ")
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_carries_schema_and_sorted_keys() {
        let mut r = Report::new("demo");
        r.input("type", "G2").result("zeta", 1).result("alpha", "2");
        let v = r.to_json();
        assert_eq!(v["schema"], SCHEMA);
        let rendered = r.render(Format::Json);
        assert!(rendered.find("alpha").unwrap() < rendered.find("zeta").unwrap());
        assert_eq!(r.render(Format::Text), "command: demo\n  type = G2\nalpha: 2\nzeta: 1\n");
    }
}
