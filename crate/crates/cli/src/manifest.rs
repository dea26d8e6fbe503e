use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
}

/// Record of one run. Everything except `elapsed_ms` is a function of the
/// parameters, so two runs with equal `input_sha256` have equal outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema_version: u32,
    pub tool: String,
    pub tool_version: String,
    pub command: String,
    pub params: serde_json::Value,
    /// Hash of the canonical JSON of `command` and `params`.
    pub input_sha256: String,
    pub outputs: Vec<FileHash>,
    pub exit_code: i32,
    pub elapsed_ms: u128,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(command: &str, params: serde_json::Value) -> Self {
        // serde_json maps are sorted, so this encoding is canonical
        let canonical = serde_json::to_vec(&serde_json::json!({ "command": command, "params": params })).expect("params serialize");
        RunManifest {
            schema_version: MANIFEST_SCHEMA_VERSION,
            tool: "symtrop".into(),
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            params,
            input_sha256: sha256_hex(&canonical),
            outputs: Vec::new(),
            exit_code: 0,
            elapsed_ms: 0,
        }
    }

    pub fn add_output(&mut self, path: &Path, bytes: &[u8]) {
        self.outputs.push(FileHash {
            path: path.file_name().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned()),
            sha256: sha256_hex(bytes),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_digest() {
        assert_eq!(sha256_hex(b"abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    }

    #[test]
    fn input_hash_ignores_key_order() {
        let a = RunManifest::new("fan", serde_json::json!({"kind": "c", "n": 3}));
        let b = RunManifest::new("fan", serde_json::json!({"n": 3, "kind": "c"}));
        assert_eq!(a.input_sha256, b.input_sha256);
        let c = RunManifest::new("fan", serde_json::json!({"n": 4, "kind": "c"}));
        assert_ne!(a.input_sha256, c.input_sha256);
    }
}
