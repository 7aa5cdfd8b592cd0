use std::time::Duration;

use hermite_core::multilinear::CONVENTIONS_VERSION;
use hermite_core::ExactMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::Format;

/// Everything a command produces before rendering.
pub struct Payload {
    pub op: &'static str,
    pub params: Value,
    pub result: Value,
    pub field: String,
    /// Extra metadata entries, e.g. the twist window used.
    pub metadata: Map<String, Value>,
    /// Table for `--format csv`, when the command has one.
    pub csv: Option<String>,
    /// Human-readable table written to stderr.
    pub summary: Option<String>,
    /// Set by commands whose exit status reflects a pass/fail outcome.
    pub passed: Option<bool>,
}

impl Payload {
    pub fn new(op: &'static str, params: Value, result: Value, field: String) -> Payload {
        Payload {
            op,
            params,
            result,
            field,
            metadata: Map::new(),
            csv: None,
            summary: None,
            passed: None,
        }
    }
}

/// `serde_json` keeps object keys sorted, so equal payloads print identically.
pub fn render(p: &Payload, format: Format, elapsed: Option<Duration>) -> Result<String, String> {
    match format {
        Format::Csv => p.csv.clone().ok_or_else(|| {
            format!(
                "csv output is only available for Betti and cohomology tables, not `{}`",
                p.op
            )
        }),
        Format::Json => {
            let mut meta = p.metadata.clone();
            meta.insert("field".into(), json!(p.field));
            meta.insert("conventions_version".into(), json!(CONVENTIONS_VERSION));
            if let Some(t) = elapsed {
                meta.insert("timings_ms".into(), json!(t.as_millis() as u64));
            }
            let doc = json!({
                "op": p.op,
                "params": p.params,
                "result": p.result,
                "metadata": meta,
            });
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(s)
        }
    }
}

fn integer(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// Shape, labels and sorted `[row, col, numerator, denominator]` entries.
pub fn matrix_json(m: &ExactMatrix) -> Value {
    let entries: Vec<Value> = m
        .quadruples()
        .iter()
        .map(|(r, c, n, d)| json!([r, c, integer(n), integer(d)]))
        .collect();
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "domain": m.domain().map(|s| s.to_string()),
        "codomain": m.codomain().map(|s| s.to_string()),
        "entries": entries,
    })
}
