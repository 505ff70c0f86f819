//! JSON reports shared by the CLI and batch runs.
//!
//! Every map in a report is ordered (`BTreeMap`), so identical inputs and
//! seed serialize to byte-identical text.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::certificate::Certificate;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub theorem: String,
    /// Text-format inputs keyed by role (`vars`, `map`, `g`, `poly`, ...).
    pub inputs: BTreeMap<String, Vec<String>>,
    pub verdict: Value,
    pub certificates: Vec<Certificate>,
    pub bounds: BTreeMap<String, u64>,
    pub seed: Option<u64>,
}

impl Report {
    pub fn new(theorem: &str) -> Self {
        Report {
            theorem: theorem.to_string(),
            inputs: BTreeMap::new(),
            verdict: Value::Null,
            certificates: Vec::new(),
            bounds: BTreeMap::new(),
            seed: None,
        }
    }

    pub fn input<S: ToString>(mut self, key: &str, items: impl IntoIterator<Item = S>) -> Self {
        self.inputs.insert(key.to_string(), items.into_iter().map(|s| s.to_string()).collect());
        self
    }

    pub fn bound(mut self, key: &str, value: u64) -> Self {
        self.bounds.insert(key.to_string(), value);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_verdict<T: Serialize>(mut self, verdict: &T) -> Self {
        self.verdict = serde_json::to_value(verdict).expect("verdict serializes");
        self
    }

    pub fn with_certificates(mut self, certs: impl IntoIterator<Item = Certificate>) -> Self {
        self.certificates.extend(certs);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    /// Checks every attached certificate offline.
    pub fn verify_certificates(&self) -> Result<bool> {
        for c in &self.certificates {
            if !c.verify()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
