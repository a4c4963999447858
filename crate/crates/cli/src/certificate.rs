//! Verification certificates.
//!
//! A certificate is a JSON document with these top-level keys:
//!
//! - `schema_version`: integer, bumped on incompatible changes.
//! - `tool`: `{name, version}` of the binary that produced it.
//! - `config`: the resolved run configuration (`command` plus its parameters).
//! - `results`: one entry per check, tagged by `kind`:
//!   - `exact`: `relation`, `N`, `params`, `states_checked`, `checks`,
//!     `pass`, `failures`, `witnesses`;
//!   - `numeric`: `identity`, `b`, `samples`, `max_residual`, `tolerance`,
//!     `pass`, `residuals`, `failures`, `witnesses`;
//!   - `skipped`: `name`, `reason`.
//! - `pass`: conjunction of every result.
//! - `content_hash`: hex SHA-256 of the compact JSON of the five keys above,
//!   in that order.
//! - `timing`: `{started_unix, elapsed_seconds}`; the only field that varies
//!   between identical runs, and not covered by the hash.
//!
//! At most [`MAX_WITNESSES`] witnesses are stored per result; `failures`
//! always holds the total.

use serde::Serialize;
use sha2::{Digest, Sha256};
use tetra_core::report::{VerificationReport, MAX_WITNESSES};
use tetra_modular::{IdentityReport, SampleResidual};

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

impl ToolInfo {
    pub fn current() -> Self {
        Self { name: "tetra", version: env!("CARGO_PKG_VERSION") }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericResult {
    #[serde(flatten)]
    pub report: IdentityReport,
    pub failures: usize,
    /// Failing samples, worst first.
    pub witnesses: Vec<SampleResidual>,
}

impl From<IdentityReport> for NumericResult {
    fn from(report: IdentityReport) -> Self {
        let mut bad: Vec<SampleResidual> = report
            .residuals
            .iter()
            .filter(|r| !(r.residual <= report.tolerance))
            .cloned()
            .collect();
        let failures = bad.len();
        bad.sort_by(|a, b| b.residual.total_cmp(&a.residual));
        bad.truncate(MAX_WITNESSES);
        Self { report, failures, witnesses: bad }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CheckResult {
    Exact(VerificationReport),
    Numeric(NumericResult),
    Skipped { name: String, reason: String },
}

impl CheckResult {
    pub fn pass(&self) -> bool {
        match self {
            CheckResult::Exact(r) => r.pass,
            CheckResult::Numeric(r) => r.report.pass,
            CheckResult::Skipped { .. } => true,
        }
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let verdict = if self.pass() { "PASS" } else { "FAIL" };
        match self {
            CheckResult::Exact(r) => {
                let mut line = format!("{verdict} {}", r.relation);
                for (k, v) in &r.params {
                    line.push_str(&format!(" {k}={v}"));
                }
                line.push_str(&format!(" N={}: {} checks on {} states", r.cutoff, r.checks, r.states_checked));
                if let Some(w) = r.witnesses.first() {
                    line.push_str(&format!(
                        "; {} failures, first: {} at {:?}: {}",
                        r.failures, w.check, w.state, w.detail
                    ));
                }
                line
            }
            CheckResult::Numeric(r) => format!(
                "{verdict} {}: {} samples, max residual {:.3e} (tolerance {:.0e})",
                r.report.identity, r.report.samples, r.report.max_residual, r.report.tolerance
            ),
            CheckResult::Skipped { name, reason } => format!("SKIP {name}: {reason}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Timing {
    pub started_unix: u64,
    pub elapsed_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub tool: ToolInfo,
    pub config: RunConfig,
    pub results: Vec<CheckResult>,
    pub pass: bool,
    pub content_hash: String,
    pub timing: Timing,
}

#[derive(Serialize)]
struct Hashed<'a> {
    schema_version: u32,
    tool: &'a ToolInfo,
    config: &'a RunConfig,
    results: &'a [CheckResult],
    pass: bool,
}

impl Certificate {
    pub fn new(config: RunConfig, results: Vec<CheckResult>, timing: Timing) -> Self {
        let tool = ToolInfo::current();
        let pass = results.iter().all(CheckResult::pass);
        let body = Hashed { schema_version: SCHEMA_VERSION, tool: &tool, config: &config, results: &results, pass };
        let bytes = serde_json::to_vec(&body).expect("certificate serializes");
        let content_hash = hex::encode(Sha256::digest(&bytes));
        Self { schema_version: SCHEMA_VERSION, tool, config, results, pass, content_hash, timing }
    }

    /// Recomputes the hash from the other fields.
    pub fn hash_is_valid(&self) -> bool {
        let fresh = Certificate::new(self.config.clone(), self.results.clone(), self.timing.clone());
        fresh.content_hash == self.content_hash
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Task;

    fn config() -> RunConfig {
        RunConfig { task: Task::Involution { cutoff: 1 }, threads: None, output: None }
    }

    #[test]
    fn hash_ignores_timing() {
        let a = Certificate::new(config(), vec![], Timing { started_unix: 1, elapsed_seconds: 0.5 });
        let b = Certificate::new(config(), vec![], Timing { started_unix: 2, elapsed_seconds: 9.0 });
        assert_eq!(a.content_hash, b.content_hash);
        assert!(a.hash_is_valid());
    }

    #[test]
    fn hash_tracks_results() {
        let t = Timing { started_unix: 0, elapsed_seconds: 0.0 };
        let a = Certificate::new(config(), vec![], t.clone());
        let skip = CheckResult::Skipped { name: "x".into(), reason: "y".into() };
        let b = Certificate::new(config(), vec![skip], t);
        assert_ne!(a.content_hash, b.content_hash);
        assert_eq!(a.content_hash.len(), 64);
    }

    #[test]
    fn numeric_witnesses_are_capped_and_sorted() {
        let residuals = (0..15)
            .map(|k| SampleResidual {
                label: format!("s{k}"),
                point: [k as f64, 0.0],
                residual: k as f64,
            })
            .collect();
        let report = IdentityReport {
            identity: "difference".into(),
            b: [1.0, 0.0],
            samples: 15,
            max_residual: 14.0,
            tolerance: 1.5,
            pass: false,
            residuals,
        };
        let r = NumericResult::from(report);
        assert_eq!(r.failures, 13);
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        assert_eq!(r.witnesses[0].residual, 14.0);
    }
}
