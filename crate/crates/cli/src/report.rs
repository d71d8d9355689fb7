use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use z2cut::complex::{Chain, Complex};

pub const SCHEMA: &str = "z2cut-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct InputFile {
    pub role: String,
    pub path: String,
    pub sha256: String,
}

impl InputFile {
    pub fn new(role: &str, path: &Path, bytes: &[u8]) -> Self {
        Self {
            role: role.to_string(),
            path: path.display().to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

/// Machine-readable record of one invocation. Everything except `timing_ms`
/// is a function of the command line, the input files and the seed.
#[derive(Clone, Debug, Serialize)]
pub struct RunArtifact {
    pub schema: &'static str,
    pub command: Vec<String>,
    pub inputs: Vec<InputFile>,
    pub seed: Option<u64>,
    pub parameters: BTreeMap<String, Value>,
    pub outputs: BTreeMap<String, Value>,
    pub verdicts: BTreeMap<String, bool>,
    pub exit_code: i32,
    pub error: Option<String>,
    pub timing_ms: f64,
}

impl RunArtifact {
    pub fn new(command: Vec<String>) -> Self {
        Self {
            schema: SCHEMA,
            command,
            inputs: Vec::new(),
            seed: None,
            parameters: BTreeMap::new(),
            outputs: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            exit_code: 0,
            error: None,
            timing_ms: 0.0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), json!(value));
    }

    pub fn output(&mut self, key: &str, value: impl Serialize) {
        self.outputs.insert(key.to_string(), json!(value));
    }

    pub fn verdict(&mut self, key: &str, value: bool) {
        self.verdicts.insert(key.to_string(), value);
    }
}

/// A chain as its dimension and vertex lists.
pub fn chain_json(c: &Chain, k: &Complex) -> Value {
    let simplices: Vec<&[u32]> = c.simplices(k).into_iter().map(|s| s.vertices()).collect();
    json!({ "dim": c.dim(), "size": c.len(), "simplices": simplices })
}
