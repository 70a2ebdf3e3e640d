use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectOutcome {
    pub expected: String,
    pub actual: String,
    pub matched: bool,
}

/// What a command computed, before the report envelope is added.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub summary: String,
    pub results: Value,
    pub certification: Option<Value>,
    /// The value `--expect` is compared against.
    pub key: String,
    /// A case of the regression suite did not match.
    pub mismatch: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub summary: String,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certification: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<ExpectOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

/// Case, spacing and `_` versus space do not matter.
pub fn normalize(s: &str) -> String {
    s.trim()
        .to_lowercase()
        .replace('_', " ")
        .split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|x| x.is_number() || x.is_string()) => {
            items.iter().map(inline).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values serialize") + "\n"
    }

    /// Text rendering of the same value the JSON output carries.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.summary);
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                match v {
                    Value::Array(rows) if rows.iter().any(|r| r.is_object()) => {
                        out.push_str(&format!("{k}:\n"));
                        for r in rows {
                            out.push_str(&format!("  {}\n", render_row(r)));
                        }
                    }
                    _ => out.push_str(&format!("{k}: {}\n", inline(v))),
                }
            }
        }
        if let Some(c) = &self.certification {
            out.push_str(&format!("certification: {}\n", inline(c)));
        }
        if let Some(e) = &self.expect {
            let status = if e.matched { "matched" } else { "MISMATCH" };
            out.push_str(&format!("expect: {status} (expected `{}`, got `{}`)\n", e.expected, e.actual));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("time: {t:.1} ms\n"));
        }
        out
    }
}

fn render_row(r: &Value) -> String {
    match r {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", inline(v)))
            .collect::<Vec<_>>()
            .join("  "),
        other => inline(other),
    }
}
