use std::collections::BTreeMap;

use serde::Serialize;

use super::certificate::Certificate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Holds,
    Fails,
    UnknownUpToBound,
    /// A hypothesis taken on trust because no decision procedure is available.
    Assumed,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceVerdict {
    pub conditions: BTreeMap<String, Status>,
    pub consistent_with_theorem: bool,
    /// Present whenever `consistent_with_theorem` is false.
    pub counterexample: Option<Certificate>,
    /// Supporting certificates (witnesses, non-square-free images, ...).
    pub certificates: Vec<Certificate>,
}

impl EquivalenceVerdict {
    pub(crate) fn new() -> Self {
        EquivalenceVerdict {
            conditions: BTreeMap::new(),
            consistent_with_theorem: true,
            counterexample: None,
            certificates: Vec::new(),
        }
    }

    pub(crate) fn set(&mut self, key: &str, s: Status) {
        self.conditions.insert(key.to_string(), s);
    }

    pub(crate) fn violate(&mut self, cert: Certificate) {
        self.consistent_with_theorem = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(cert);
        } else {
            self.certificates.push(cert);
        }
    }

    pub fn status(&self, key: &str) -> Option<Status> {
        self.conditions.get(key).copied()
    }

    /// Any unknown condition.
    pub fn has_unknown(&self) -> bool {
        self.conditions.values().any(|s| *s == Status::UnknownUpToBound)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FalsifierReport {
    pub samples_tried: usize,
    pub counterexamples: Vec<Certificate>,
    pub exhausted_bounds: BTreeMap<String, u64>,
}

impl FalsifierReport {
    pub(crate) fn new() -> Self {
        FalsifierReport { samples_tried: 0, counterexamples: Vec::new(), exhausted_bounds: BTreeMap::new() }
    }

    pub(crate) fn bound(&mut self, key: &str, v: u64) {
        self.exhausted_bounds.insert(key.to_string(), v);
    }

    /// Re-verifies every counterexample from its certificate alone.
    pub fn reverify(&self) -> crate::error::Result<bool> {
        for c in &self.counterexamples {
            if !c.verify()? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
