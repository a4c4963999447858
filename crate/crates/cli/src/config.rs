use std::f64::consts::PI;
use std::path::PathBuf;

use serde::Serialize;
use tetra_core::uq::{build_algebra, build_cyclic};
use tetra_modular::{Identity, QDilogContext, C64};

use crate::args::{self, Cli, Command, DilogCheck, Format, Gen, Labels, Verify};
use crate::CliError;

pub const ALL_LABELS: [(u8, u8); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

/// A fully resolved and validated request.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub task: Task,
    /// Requested worker threads; `None` means one per core.
    pub threads: Option<usize>,
    #[serde(skip)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Task {
    Qosc { cutoff: u32 },
    Uq { labels: Vec<(u8, u8)>, n: usize, cutoff: u32, cyclic: bool, coproduct: bool },
    Involution { cutoff: u32 },
    Intertwining { cutoff: u32 },
    Tetrahedron { cutoff: u32 },
    Conservation { cutoff: u32 },
    Boundary { labels: Vec<u8>, cutoff: u32 },
    Ybe { labels: Vec<(u8, u8)>, n: usize, max_order: u32, cutoff: u32 },
    Symmetry { labels: Vec<(u8, u8)>, n: usize, max_order: u32, cutoff: u32 },
    DilogCheck {
        b: [f64; 2],
        identities: Vec<String>,
        samples: usize,
        lambdas: Vec<f64>,
        tolerance: Option<f64>,
    },
    GenRmatrix { s: u8, t: u8, n: usize, min_order: u32, max_order: u32, cutoff: u32, csv: bool },
    GenR3d { cutoff: u32 },
    GenAlgebra { s: u8, t: u8, n: usize, cyclic: bool },
}

impl Task {
    pub fn is_generation(&self) -> bool {
        matches!(self, Task::GenRmatrix { .. } | Task::GenR3d { .. } | Task::GenAlgebra { .. })
    }
}

/// Parses `J..K`, `J..=K` (both inclusive) or a bare `K` (meaning `0..K`).
pub fn parse_orders(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Usage(format!("cannot read order range {s:?}; expected J..K or K"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?)
        }
        None => (0, s.trim().parse().map_err(|_| bad())?),
    };
    if lo > hi {
        return Err(CliError::Usage(format!("empty order range {s:?}")));
    }
    Ok((lo, hi))
}

fn verification_orders(s: &str) -> Result<u32, CliError> {
    match parse_orders(s)? {
        (0, hi) => Ok(hi),
        _ => Err(CliError::Usage("verification covers every order from 0; use 0..K".into())),
    }
}

fn labels(l: &Labels) -> Vec<(u8, u8)> {
    match (l.s, l.t) {
        (Some(s), Some(t)) => vec![(s, t)],
        _ => ALL_LABELS.to_vec(),
    }
}

fn check_algebra(labels: &[(u8, u8)], n: usize) -> Result<(), CliError> {
    for &(s, t) in labels {
        build_algebra(s, t, n).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(())
}

fn dilog_config(d: &DilogCheck) -> Result<Task, CliError> {
    let b = match (d.b_re, d.b_im, d.theta) {
        (Some(re), Some(im), _) => C64::new(re, im),
        (_, _, Some(theta)) => C64::from_polar(1.0, theta),
        _ => C64::from_polar(1.0, PI / 5.0),
    };
    let ctx = QDilogContext::new(b).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut identities = Vec::new();
    for name in &d.identity {
        let id: Identity = name.parse().map_err(CliError::Usage)?;
        if let Some(reason) = inapplicable(&ctx, id) {
            return Err(CliError::Usage(format!("{id}: {reason}")));
        }
        if !identities.contains(&id.to_string()) {
            identities.push(id.to_string());
        }
    }
    if identities.is_empty() {
        identities = Identity::ALL.iter().map(|i| i.to_string()).collect();
    }
    if d.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    if let Some(tol) = d.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {tol}")));
        }
    }
    let lambdas = if d.lambda.is_empty() {
        tetra_modular::CheckOptions::default().lambdas
    } else {
        d.lambda.clone()
    };
    if let Some(l) = lambdas.iter().find(|l| **l == 0.0 || !l.is_finite()) {
        return Err(CliError::Usage(format!("--lambda must be finite and nonzero, got {l}")));
    }
    Ok(Task::DilogCheck { b: [b.re, b.im], identities, samples: d.samples, lambdas, tolerance: d.tol })
}

/// Why an identity cannot be evaluated at this `b`, if it cannot.
pub fn inapplicable(ctx: &QDilogContext, id: Identity) -> Option<&'static str> {
    match id {
        Identity::Unitarity if !ctx.is_strong_coupling() => Some("needs |b| = 1"),
        Identity::ProductRoutes if !ctx.product_valid() => Some("needs Im b^2 > 0"),
        _ => None,
    }
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        if cli.threads == Some(0) {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        let (task, output) = match &cli.command {
            Command::Verify(v) => match v {
                Verify::Qosc { cutoff, output } => (Task::Qosc { cutoff: *cutoff }, output),
                Verify::Uq { labels: l, n, cutoff, cyclic, coproduct, output } => {
                    let labels = if *cyclic {
                        build_cyclic(*n).map_err(|e| CliError::Usage(e.to_string()))?;
                        Vec::new()
                    } else {
                        let labels = labels(l);
                        check_algebra(&labels, *n)?;
                        labels
                    };
                    let task = Task::Uq {
                        labels,
                        n: *n,
                        cutoff: *cutoff,
                        cyclic: *cyclic,
                        coproduct: *coproduct,
                    };
                    (task, output)
                }
                Verify::Involution { cutoff, output } => (Task::Involution { cutoff: *cutoff }, output),
                Verify::Intertwining { cutoff, output } => {
                    (Task::Intertwining { cutoff: *cutoff }, output)
                }
                Verify::Tetrahedron { cutoff, output } => {
                    (Task::Tetrahedron { cutoff: *cutoff }, output)
                }
                Verify::Conservation { cutoff, output } => {
                    (Task::Conservation { cutoff: *cutoff }, output)
                }
                Verify::Boundary { s, cutoff, output } => {
                    let labels = s.map_or(vec![1, 2], |s| vec![s]);
                    (Task::Boundary { labels, cutoff: *cutoff }, output)
                }
                Verify::Ybe { labels: l, n, orders, cutoff, output } => {
                    let labels = labels(l);
                    check_algebra(&labels, *n)?;
                    let max_order = verification_orders(orders)?;
                    (Task::Ybe { labels, n: *n, max_order, cutoff: *cutoff }, output)
                }
                Verify::Symmetry { labels: l, n, orders, cutoff, output } => {
                    let labels = labels(l);
                    check_algebra(&labels, *n)?;
                    let max_order = verification_orders(orders)?;
                    (Task::Symmetry { labels, n: *n, max_order, cutoff: *cutoff }, output)
                }
            },
            Command::Dilog(args::Dilog::Check(d)) => (dilog_config(d)?, &d.output),
            Command::Gen(g) => match g {
                Gen::Rmatrix { s, t, n, orders, cutoff, format, output } => {
                    check_algebra(&[(*s, *t)], *n)?;
                    let (min_order, max_order) = parse_orders(orders)?;
                    let task = Task::GenRmatrix {
                        s: *s,
                        t: *t,
                        n: *n,
                        min_order,
                        max_order,
                        cutoff: *cutoff,
                        csv: *format == Format::Csv,
                    };
                    (task, output)
                }
                Gen::R3d { cutoff, output } => (Task::GenR3d { cutoff: *cutoff }, output),
                Gen::Algebra { s, t, n, cyclic, output } => {
                    if *cyclic {
                        build_cyclic(*n).map_err(|e| CliError::Usage(e.to_string()))?;
                    } else {
                        check_algebra(&[(*s, *t)], *n)?;
                    }
                    (Task::GenAlgebra { s: *s, t: *t, n: *n, cyclic: *cyclic }, output)
                }
            },
        };
        Ok(Self { task, threads: cli.threads, output: output.out.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_ranges() {
        assert_eq!(parse_orders("0..3").unwrap(), (0, 3));
        assert_eq!(parse_orders("1..=2").unwrap(), (1, 2));
        assert_eq!(parse_orders("4").unwrap(), (0, 4));
        assert!(parse_orders("3..1").is_err());
        assert!(parse_orders("a..b").is_err());
        assert!(verification_orders("1..3").is_err());
    }
}
