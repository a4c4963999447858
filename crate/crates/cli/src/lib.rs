//! Command-line front end: configuration, dispatch to the exact and
//! numerical checkers, certificates and coefficient tables.

pub mod args;
pub mod certificate;
pub mod config;

use std::fmt::Write as _;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use serde::Serialize;
use tetra_core::fock::verify_qosc_relations;
use tetra_core::mpo::{
    build_s, verify_boundary_fixed, verify_chi_conditions, verify_symmetry, verify_ybe,
    zigzag_transform, MatrixEntry,
};
use tetra_core::r3d::{
    coefficient_csv, verify_conservation, verify_intertwining, verify_involution,
    verify_tetrahedron,
};
use tetra_core::report::VerificationReport;
use tetra_core::uq::{
    build_algebra, build_cyclic, verify_coproduct_relations, verify_uq_relations, AlgebraSpec,
    CoproductVariant, UqError,
};
use tetra_modular::{run_identity, CheckOptions, Identity, ModularError, QDilogContext, C64};

use certificate::{Certificate, CheckResult, NumericResult, Timing};
use config::{inapplicable, RunConfig, Task};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("numerical evaluation failed: {0}")]
    Numeric(#[from] ModularError),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Numeric(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<UqError> for CliError {
    fn from(e: UqError) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub enum Outcome {
    Certificate(Certificate),
    /// Generated table, ready to write.
    Table(String),
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self {
            Outcome::Certificate(c) if !c.pass => 1,
            _ => 0,
        }
    }

    pub fn text(&self) -> String {
        match self {
            Outcome::Certificate(c) => c.to_json(),
            Outcome::Table(t) => t.clone(),
        }
    }
}

pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    if config.task.is_generation() {
        return generate(&config.task).map(Outcome::Table);
    }
    let started_unix = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs());
    let clock = Instant::now();
    let results = verify(&config.task)?;
    let timing = Timing { started_unix, elapsed_seconds: clock.elapsed().as_secs_f64() };
    Ok(Outcome::Certificate(Certificate::new(config.clone(), results, timing)))
}

fn exact(r: VerificationReport) -> CheckResult {
    CheckResult::Exact(r)
}

fn uq_reports(spec: &AlgebraSpec, cutoff: u32, coproduct: bool) -> Vec<CheckResult> {
    let mut out = vec![exact(verify_uq_relations(spec, cutoff))];
    if coproduct {
        for variant in [CoproductVariant::Delta, CoproductVariant::Opposite] {
            out.push(exact(verify_coproduct_relations(spec, variant, cutoff)));
        }
    }
    out
}

fn verify(task: &Task) -> Result<Vec<CheckResult>, CliError> {
    let mut out = Vec::new();
    match task {
        Task::Qosc { cutoff } => out.push(exact(verify_qosc_relations(*cutoff))),
        Task::Uq { labels, n, cutoff, cyclic, coproduct } => {
            if *cyclic {
                out.extend(uq_reports(&build_cyclic(*n)?, *cutoff, *coproduct));
            }
            for &(s, t) in labels {
                out.extend(uq_reports(&build_algebra(s, t, *n)?, *cutoff, *coproduct));
            }
        }
        Task::Involution { cutoff } => out.push(exact(verify_involution(*cutoff))),
        Task::Intertwining { cutoff } => out.push(exact(verify_intertwining(*cutoff))),
        Task::Tetrahedron { cutoff } => out.push(exact(verify_tetrahedron(*cutoff))),
        Task::Conservation { cutoff } => out.push(exact(verify_conservation(*cutoff))),
        Task::Boundary { labels, cutoff } => {
            for &s in labels {
                out.push(exact(verify_boundary_fixed(s, *cutoff)?));
                out.push(exact(verify_chi_conditions(s, *cutoff)?));
            }
        }
        Task::Ybe { labels, n, max_order, cutoff } => {
            for &(s, t) in labels {
                out.push(exact(verify_ybe(s, t, *n, *max_order, *cutoff)?));
            }
        }
        Task::Symmetry { labels, n, max_order, cutoff } => {
            for &(s, t) in labels {
                out.push(exact(verify_symmetry(s, t, *n, *max_order, *cutoff)?));
            }
        }
        Task::DilogCheck { b, identities, samples, lambdas, tolerance } => {
            let ctx = QDilogContext::new(C64::new(b[0], b[1]))?;
            let opts = CheckOptions { samples: *samples, lambdas: lambdas.clone(), tolerance: *tolerance };
            for name in identities {
                let id: Identity = name.parse().map_err(CliError::Usage)?;
                if let Some(reason) = inapplicable(&ctx, id) {
                    out.push(CheckResult::Skipped { name: name.clone(), reason: reason.into() });
                    continue;
                }
                let report = match run_identity(&ctx, id, &opts) {
                    Err(ModularError::InvalidArgument(m)) => return Err(CliError::Usage(m)),
                    r => r?,
                };
                out.push(CheckResult::Numeric(NumericResult::from(report)));
            }
        }
        Task::GenRmatrix { .. } | Task::GenR3d { .. } | Task::GenAlgebra { .. } => {
            unreachable!("generation tasks do not verify")
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct RMatrixTable<'a> {
    s: u8,
    t: u8,
    n: usize,
    orders: [u32; 2],
    #[serde(rename = "N")]
    cutoff: u32,
    #[serde(rename = "S")]
    plain: &'a [MatrixEntry],
    #[serde(rename = "S_hat")]
    hat: &'a [MatrixEntry],
}

fn state(idx: &tetra_core::fock::FockIndex) -> String {
    idx.as_slice().iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

fn generate(task: &Task) -> Result<String, CliError> {
    match task {
        Task::GenRmatrix { s, t, n, min_order, max_order, cutoff, csv } => {
            let series = build_s(*s, *t, *n, *max_order)?;
            let keep = |e: &MatrixEntry| e.z_order >= *min_order;
            let plain: Vec<_> = series.entries(*cutoff).into_iter().filter(keep).collect();
            let hat: Vec<_> = zigzag_transform(&series).entries(*cutoff).into_iter().filter(keep).collect();
            if *csv {
                let mut out = String::from("operator,z_order,in_state,out_state,coeff\n");
                for (name, entries) in [("S", &plain), ("S_hat", &hat)] {
                    for e in entries.iter() {
                        writeln!(out, "{name},{},{},{},\"{}\"", e.z_order, state(&e.in_state), state(&e.out_state), e.coeff)
                            .unwrap();
                    }
                }
                Ok(out)
            } else {
                let table = RMatrixTable {
                    s: *s,
                    t: *t,
                    n: *n,
                    orders: [*min_order, *max_order],
                    cutoff: *cutoff,
                    plain: &plain,
                    hat: &hat,
                };
                Ok(serde_json::to_string_pretty(&table).expect("table serializes") + "\n")
            }
        }
        Task::GenR3d { cutoff } => Ok(coefficient_csv(*cutoff)),
        Task::GenAlgebra { s, t, n, cyclic } => {
            let spec = if *cyclic { build_cyclic(*n)? } else { build_algebra(*s, *t, *n)? };
            Ok(serde_json::to_string_pretty(&spec).expect("spec serializes") + "\n")
        }
        _ => unreachable!("verification tasks do not generate"),
    }
}
