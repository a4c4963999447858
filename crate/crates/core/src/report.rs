//! Verification reports shared by every exact checker.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

/// Witnesses kept per report; the total failure count is always retained.
pub const MAX_WITNESSES: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Which identity failed (relation id, generator, order...).
    pub check: String,
    /// Input basis state, when the check is state-based.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<u32>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub relation: String,
    #[serde(rename = "N")]
    pub cutoff: u32,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, serde_json::Value>,
    pub states_checked: usize,
    pub checks: usize,
    pub pass: bool,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn new(relation: impl Into<String>, cutoff: u32) -> Self {
        Self {
            relation: relation.into(),
            cutoff,
            params: BTreeMap::new(),
            states_checked: 0,
            checks: 0,
            pass: true,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
        self
    }

    pub fn record_failure(&mut self, w: Witness) {
        self.pass = false;
        self.failures += 1;
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(w);
        }
    }

    /// Folds in another report's counts and witnesses (used when a suite
    /// aggregates several sub-checks under one relation name).
    pub fn absorb(&mut self, other: VerificationReport) {
        self.states_checked += other.states_checked;
        self.checks += other.checks;
        for w in other.witnesses {
            if self.witnesses.len() < MAX_WITNESSES {
                self.witnesses.push(w);
            }
        }
        self.failures += other.failures;
        self.pass &= other.pass;
    }

    /// Runs `check` over `items` in parallel. Each call returns the number of
    /// identities it compared plus any witnesses; aggregation preserves input
    /// order so reports are reproducible.
    pub fn run_parallel<T, F>(&mut self, items: &[T], check: F)
    where
        T: Sync,
        F: Fn(&T) -> (usize, Vec<Witness>) + Sync,
    {
        let results: Vec<(usize, Vec<Witness>)> = items.par_iter().map(&check).collect();
        self.states_checked += items.len();
        for (n, ws) in results {
            self.checks += n;
            for w in ws {
                self.record_failure(w);
            }
        }
    }
}
