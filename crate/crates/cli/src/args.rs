use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "tetra", version, about = "Exact and numerical checks of the 3D R, its tetrahedron equation and the R-matrices built from it")]
pub struct Cli {
    /// Worker threads for parallel checks (default: one per core).
    #[arg(long, global = true, env = "TETRA_THREADS")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run an exact verification and emit a certificate.
    #[command(subcommand)]
    Verify(Verify),
    /// Numerical identities of the quantum dilogarithm and the modular kernel.
    #[command(subcommand)]
    Dilog(Dilog),
    /// Write coefficient tables.
    #[command(subcommand)]
    Gen(Gen),
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the certificate here instead of stdout.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Labels {
    /// Boundary label at node 0; with --t, omit both to run all four pairs.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), requires = "t")]
    pub s: Option<u8>,
    /// Boundary label at node n.
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), requires = "s")]
    pub t: Option<u8>,
}

#[derive(Debug, Subcommand)]
pub enum Verify {
    /// q-oscillator relations on single-site states |m>, m <= N.
    Qosc {
        #[arg(long = "N", default_value_t = 6)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Oscillator realization of U_q(g^{s,t}) (all relations including Serre).
    Uq {
        #[command(flatten)]
        labels: Labels,
        /// Rank (number of Fock sites).
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Bound on the total degree of the input states.
        #[arg(long = "N", default_value_t = 3)]
        cutoff: u32,
        /// Use the cyclic A^(1)_{n-1} reading instead of g^{s,t}.
        #[arg(long, conflicts_with_all = ["s", "t"])]
        cyclic: bool,
        /// Also check that both coproducts are homomorphisms.
        #[arg(long)]
        coproduct: bool,
        #[command(flatten)]
        output: Output,
    },
    /// R^2 = 1 on all triples with indices <= N.
    Involution {
        #[arg(long = "N", default_value_t = 3)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
    /// The ten intertwining relations of R with the oscillator generators.
    Intertwining {
        #[arg(long = "N", default_value_t = 3)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
    /// The tetrahedron equation on all 6-site states with indices <= N.
    Tetrahedron {
        #[arg(long = "N", default_value_t = 2)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Sitewise conservation laws of R.
    Conservation {
        #[arg(long = "N", default_value_t = 3)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Boundary vectors are fixed by R (both labels unless --s is given).
    Boundary {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        s: Option<u8>,
        #[arg(long = "N", default_value_t = 4)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Yang-Baxter equation for S^{s,t}(z).
    Ybe {
        #[command(flatten)]
        labels: Labels,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// Total bivariate order, as `0..K` (inclusive) or `K`.
        #[arg(long, default_value = "0..2")]
        orders: String,
        #[arg(long = "N", default_value_t = 2)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Quantum affine symmetry of the zig-zag transformed R-matrix.
    Symmetry {
        #[command(flatten)]
        labels: Labels,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// z-orders, as `0..K` (inclusive) or `K`.
        #[arg(long, default_value = "0..4")]
        orders: String,
        #[arg(long = "N", default_value_t = 3)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum Dilog {
    /// Evaluate identity residuals at real sample points.
    Check(DilogCheck),
}

#[derive(Debug, Args)]
pub struct DilogCheck {
    /// Re b (default: b = e^{iπ/5}).
    #[arg(long, requires = "b_im", allow_negative_numbers = true)]
    pub b_re: Option<f64>,
    /// Im b.
    #[arg(long, requires = "b_re", allow_negative_numbers = true)]
    pub b_im: Option<f64>,
    /// Unimodular b = e^{iθ}.
    #[arg(long, conflicts_with_all = ["b_re", "b_im"], allow_negative_numbers = true)]
    pub theta: Option<f64>,
    /// Residual tolerance (default depends on the identity).
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 5)]
    pub samples: usize,
    /// Identity name, repeatable; all applicable ones when omitted.
    #[arg(long)]
    pub identity: Vec<String>,
    /// Spectral parameter for the Fourier identities, repeatable.
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Vec<f64>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Gen {
    /// Matrix elements of S^{s,t}(z) and its zig-zag transform.
    Rmatrix {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
        s: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
        t: u8,
        #[arg(long, default_value_t = 1)]
        n: usize,
        /// z-orders, as `J..K` (inclusive) or `K`.
        #[arg(long, default_value = "0..2")]
        orders: String,
        /// Largest input occupation.
        #[arg(long = "N", default_value_t = 2)]
        cutoff: u32,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        output: Output,
    },
    /// Nonzero 3D R coefficients with inputs <= N, as CSV.
    R3d {
        #[arg(long = "N", default_value_t = 2)]
        cutoff: u32,
        #[command(flatten)]
        output: Output,
    },
    /// Cartan data of U_q(g^{s,t}) as JSON.
    Algebra {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
        s: u8,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), default_value_t = 1)]
        t: u8,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        cyclic: bool,
        #[command(flatten)]
        output: Output,
    },
}
