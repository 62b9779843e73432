//! Machine-readable run reports: JSON, CSV, and plain text. Reports are
//! byte-identical across runs for fixed (config, flags, seed); timings are
//! zeroed unless explicitly requested.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub timing_ms: u64,
}

impl CheckResult {
    pub fn new(name: impl Into<String>, pass: bool, witness: Option<String>) -> Self {
        CheckResult { name: name.into(), pass, witness, timing_ms: 0 }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length_bound: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xyz: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: String,
    pub config_digest: String,
    pub command: String,
    pub parameters: Params,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub values: BTreeMap<String, serde_json::Value>,
    pub overall: bool,
}

impl RunReport {
    pub fn new(command: &str, config_digest: &str, parameters: Params) -> Self {
        RunReport {
            version: env!("CARGO_PKG_VERSION").to_string(),
            config_digest: config_digest.to_string(),
            command: command.to_string(),
            parameters,
            checks: Vec::new(),
            values: BTreeMap::new(),
            overall: true,
        }
    }

    pub fn push(&mut self, check: CheckResult) {
        self.overall &= check.pass;
        self.checks.push(check);
    }

    pub fn set_value(&mut self, key: &str, value: serde_json::Value) {
        self.values.insert(key.to_string(), value);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("name,pass,witness,timing_ms\n");
        for c in &self.checks {
            let witness = c.witness.as_deref().unwrap_or("");
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_escape(&c.name),
                c.pass,
                csv_escape(witness),
                c.timing_ms
            ));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{} v{}  config={}\n",
            self.command, self.version, self.config_digest
        ));
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{status}] {}", c.name));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  ({w})"));
            }
            out.push('\n');
        }
        for (k, v) in &self.values {
            out.push_str(&format!("  {k} = {v}\n"));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.overall { "PASS" } else { "FAIL" }
        ));
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (json|csv|text)")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overall_is_conjunction() {
        let mut r = RunReport::new("test", "digest", Params::default());
        r.push(CheckResult::new("a", true, None));
        assert!(r.overall);
        r.push(CheckResult::new("b", false, Some("why".into())));
        assert!(!r.overall);
    }

    #[test]
    fn json_is_deterministic() {
        let build = || {
            let mut r = RunReport::new("test", "digest", Params::default());
            r.push(CheckResult::new("a", true, None));
            r.set_value("k", serde_json::json!([1, 2, 3]));
            r.to_json()
        };
        assert_eq!(build(), build());
    }

    #[test]
    fn csv_rows_and_escaping() {
        let mut r = RunReport::new("test", "digest", Params::default());
        r.push(CheckResult::new("a,b", false, Some("x \"y\"".into())));
        let csv = r.to_csv();
        assert!(csv.starts_with("name,pass,witness,timing_ms\n"));
        assert!(csv.contains("\"a,b\",false,\"x \"\"y\"\"\",0"));
    }
}
