use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Falsified,
}

/// Machine-readable result of one invocation. Contains nothing that varies
/// between runs with the same input and seed; timing goes to stderr.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input_digest: String,
    pub seed: u64,
    pub status: Status,
    pub tolerances: BTreeMap<String, f64>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are finite JSON")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}  [{}]", self.command, short_digest(&self.input_digest));
        for line in &self.summary {
            let _ = writeln!(out, "  {line}");
        }
        if let Some(msg) = &self.message {
            let _ = writeln!(out, "  FALSIFIED: {msg}");
        }
        if !self.tolerances.is_empty() {
            let tols: Vec<String> = self.tolerances.iter().map(|(k, v)| format!("{k}={v:e}")).collect();
            let _ = writeln!(out, "  tolerances: {}", tols.join(", "));
        }
        out
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().fold(String::with_capacity(64), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

fn short_digest(d: &str) -> &str {
    &d[..d.len().min(12)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(sha256_hex(b""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    }
}
