//! The run manifest: one JSON line on stderr describing what ran, with which
//! inputs, seeds, and guards, and what came out. Stdout stays byte-stable
//! across runs; timing lives only here.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// SHA-256 of the raw input text, when there is one.
    pub input_digest: Option<String>,
    pub seed: Option<u64>,
    pub field_spec: Option<String>,
    pub guards: BTreeMap<String, u64>,
    pub verdicts: Vec<String>,
    pub timing_ms: u64,
}

impl RunManifest {
    pub fn new(subcommand: &str) -> Self {
        RunManifest {
            subcommand: subcommand.to_string(),
            input_digest: None,
            seed: None,
            field_spec: None,
            guards: BTreeMap::new(),
            verdicts: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn digest_input(&mut self, text: &str) {
        let mut hasher = Sha256::new();
        hasher.update(text.as_bytes());
        self.input_digest = Some(format!("{:x}", hasher.finalize()));
    }

    pub fn emit(&self) {
        // Serialization of this struct cannot fail.
        eprintln!("{}", serde_json::to_string(self).unwrap());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_lossless() {
        let mut m = RunManifest::new("resultant-test");
        m.digest_input("ring Q vars 1\n1*x0^1\n");
        m.seed = Some(7);
        m.field_spec = Some("F5".into());
        m.guards.insert("dense".into(), 5000);
        m.guards.insert("point".into(), 2_000_000);
        m.verdicts.push("NONZERO ordering=0".into());
        m.timing_ms = 12;
        let json = serde_json::to_string(&m).unwrap();
        let back: RunManifest = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
    }
}
