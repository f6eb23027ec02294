use std::collections::BTreeMap;
use std::time::Duration;

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// The envelope every command prints.
///
/// Everything except `timing` is a function of the inputs, so two runs on the
/// same files compare equal once `timing` is dropped.
pub struct RunReport {
    pub command: Value,
    pub inputs: BTreeMap<String, String>,
    pub outcome: Value,
}

impl RunReport {
    pub fn new(command: Value) -> Self {
        RunReport {
            command,
            inputs: BTreeMap::new(),
            outcome: Value::Null,
        }
    }

    pub fn digest(&mut self, role: &str, bytes: &[u8]) {
        let hash = Sha256::digest(bytes);
        let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.insert(role.to_string(), format!("sha256:{hex}"));
    }

    /// `elapsed` is `None` when timing is masked.
    pub fn to_json(&self, elapsed: Option<Duration>, jobs: Option<usize>) -> Value {
        let mut timing = serde_json::Map::new();
        timing.insert(
            "elapsed_ms".into(),
            elapsed.map_or(Value::Null, |d| json!(d.as_secs_f64() * 1000.0)),
        );
        if let Some(j) = jobs {
            timing.insert("jobs".into(), json!(j));
        }
        json!({
            "tool": "wallman-lab",
            "version": env!("CARGO_PKG_VERSION"),
            "command": self.command,
            "inputs": self.inputs,
            "outcome": self.outcome,
            "timing": timing,
        })
    }
}
