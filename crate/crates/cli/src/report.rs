use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const TOOL: &str = "curvball";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Every command prints one of these. Without `--timing` the payload is a
/// pure function of `command`, so rerunning it reproduces the bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: Vec<String>,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub results: Value,
    pub verdict: String,
    pub exit_code: i32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_clock_s: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let v = serde_json::to_value(self).expect("reports serialize");
        let mut out = String::new();
        flatten("", &v, &mut out);
        out
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, out);
            }
        }
        _ => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&v.to_string());
            out.push('\n');
        }
    }
}
