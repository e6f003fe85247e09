use jacstrata::strata::Check;
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub results: Map<String, Value>,
    pub verification: Vec<Check>,
}

impl Report {
    pub fn new(command: &str, input: &[u8]) -> Self {
        Report {
            command: command.to_string(),
            input_digest: digest(input),
            results: Map::new(),
            verification: Vec::new(),
        }
    }

    pub fn put(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.results.insert(key.to_string(), v);
    }

    pub fn check(&mut self, check: Check) {
        self.verification.push(check);
    }

    pub fn checks(&mut self, checks: impl IntoIterator<Item = Check>) {
        self.verification.extend(checks);
    }

    pub fn passed(&self) -> bool {
        self.verification.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\ninput: {}\n", self.command, self.input_digest);
        if !self.results.is_empty() {
            out.push_str("results:\n");
            for (k, v) in &self.results {
                render(&mut out, k, v, 1);
            }
        }
        if !self.verification.is_empty() {
            out.push_str("verification:\n");
            for c in &self.verification {
                out.push_str(&format!("  {c}\n"));
            }
        }
        out
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{:x}", Sha256::digest(bytes))
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Array(items) if items.is_empty() => out.push_str(&format!("{pad}{key}: (empty)\n")),
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", parts.join(", ")));
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for item in items {
                out.push_str(&format!("{pad}  - {}\n", item_line(item)));
            }
        }
        Value::Object(map) if map.values().all(is_scalar) => {
            out.push_str(&format!("{pad}{key}: {}\n", item_line(v)));
        }
        Value::Object(map) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, v) in map {
                render(out, k, v, depth + 1);
            }
        }
        scalar => out.push_str(&format!("{pad}{key}: {}\n", inline(scalar))),
    }
}

fn item_line(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let parts: Vec<String> = map
                .iter()
                .map(|(k, v)| match v {
                    Value::Object(_) => format!("{k}={}", item_line(v)),
                    Value::Array(a) => {
                        let inner: Vec<String> = a.iter().map(inline).collect();
                        format!("{k}=[{}]", inner.join(","))
                    }
                    other => format!("{k}={}", inline(other)),
                })
                .collect();
            format!("{{{}}}", parts.join(" "))
        }
        Value::Array(a) => {
            let inner: Vec<String> = a.iter().map(inline).collect();
            format!("[{}]", inner.join(", "))
        }
        other => inline(other),
    }
}
