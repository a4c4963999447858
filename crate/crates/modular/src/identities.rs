//! Numerical checks of the functional, integral and kernel identities.
//! Each check evaluates both sides independently at deterministic sample
//! points and reports the worst residual.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::Serialize;

use crate::context::{ChiKind, QDilogContext};
use crate::kernel::{kernel_eval, raising_relation_terms, KernelPoint};
use crate::quadrature::{integrate, Estimate};
use crate::{residual, ModularError, Result, I};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `φ(σ - ic/2)/φ(σ + ic/2) = 1 + e^{2πcσ}` for `c = b, 1/b`.
    Difference,
    /// `|φ(σ)| = 1` on the real line when `|b| = 1`.
    Unitarity,
    /// `φ` is unchanged by `b ↔ 1/b`.
    BSymmetry,
    /// `χ_b(σ)/χ_b(-σ) = e^{-πσ/(2b)}`.
    ChiReflection,
    /// `χ_b(σ) χ_{1/b}(σ) = φ((σ+iη)/2)/φ((σ-iη)/2)`.
    ChiProduct,
    /// Both difference equations for `χ_b` and for `χ_{1/b}`.
    ChiSwap,
    /// `∫ χ_b² e^{-2πiσλ} dσ`.
    FourierChiSquared,
    /// `∫ χ_b χ_{1/b} e^{-2πiσλ} dσ`.
    FourierChiProduct,
    /// Integral route against infinite products (needs `Im b² > 0`).
    ProductRoutes,
    /// Kernel unchanged by `b ↔ 1/b`.
    KernelSymmetry,
    /// Kernel stable under quadrature refinement.
    KernelConvergence,
    /// Kernel satisfies the `a⁺₂` intertwining relation at shifted points.
    KernelRelation,
}

impl Identity {
    pub const ALL: [Identity; 12] = [
        Identity::Difference,
        Identity::Unitarity,
        Identity::BSymmetry,
        Identity::ChiReflection,
        Identity::ChiProduct,
        Identity::ChiSwap,
        Identity::FourierChiSquared,
        Identity::FourierChiProduct,
        Identity::ProductRoutes,
        Identity::KernelSymmetry,
        Identity::KernelConvergence,
        Identity::KernelRelation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Identity::Difference => "difference",
            Identity::Unitarity => "unitarity",
            Identity::BSymmetry => "b-symmetry",
            Identity::ChiReflection => "chi-reflection",
            Identity::ChiProduct => "chi-product",
            Identity::ChiSwap => "chi-swap",
            Identity::FourierChiSquared => "fourier-chi-squared",
            Identity::FourierChiProduct => "fourier-chi-product",
            Identity::ProductRoutes => "product-routes",
            Identity::KernelSymmetry => "kernel-symmetry",
            Identity::KernelConvergence => "kernel-convergence",
            Identity::KernelRelation => "kernel-relation",
        }
    }

    pub fn default_tolerance(self) -> f64 {
        match self {
            Identity::FourierChiSquared | Identity::FourierChiProduct => 1e-6,
            Identity::KernelRelation => 1e-5,
            _ => 1e-8,
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Identity {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Identity::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Identity::ALL.iter().map(|i| i.name()).collect();
                format!("unknown identity {s:?}; expected one of {}", names.join(", "))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SampleResidual {
    pub label: String,
    /// Sample point (real, imaginary).
    pub point: [f64; 2],
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub b: [f64; 2],
    pub samples: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub residuals: Vec<SampleResidual>,
}

impl IdentityReport {
    fn new(identity: Identity, ctx: &QDilogContext, tolerance: f64, residuals: Vec<SampleResidual>) -> Self {
        let max_residual = residuals.iter().map(|r| r.residual).fold(0.0, f64::max);
        // NaN residuals must fail
        let pass = residuals.iter().all(|r| r.residual <= tolerance) && !residuals.is_empty();
        Self {
            identity: identity.name().to_string(),
            b: [ctx.b().re, ctx.b().im],
            samples: residuals.len(),
            max_residual,
            tolerance,
            pass,
            residuals,
        }
    }
}

/// Inputs shared by all identity checks.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckOptions {
    /// Number of real sample points (at least 1).
    pub samples: usize,
    /// Spectral parameters for the Fourier identities.
    pub lambdas: Vec<f64>,
    /// `None` uses [`Identity::default_tolerance`].
    pub tolerance: Option<f64>,
}

impl Default for CheckOptions {
    fn default() -> Self {
        Self { samples: 5, lambdas: vec![0.1, 0.2, 0.35, -0.15], tolerance: None }
    }
}

/// `n` evenly spaced points on `[-1.2, 1.2]`.
pub fn sample_points(n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.25],
        _ => (0..n).map(|k| -1.2 + 2.4 * k as f64 / (n - 1) as f64).collect(),
    }
}

fn point(label: impl Into<String>, z: C64, residual: f64) -> SampleResidual {
    SampleResidual { label: label.into(), point: [z.re, z.im], residual }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn sweep<T, F>(items: &[T], f: F) -> Result<Vec<SampleResidual>>
where
    T: Sync,
    F: Fn(&T) -> Result<Vec<SampleResidual>> + Sync + Send,
{
    let parts: Result<Vec<_>> = items.par_iter().map(f).collect();
    Ok(parts?.into_iter().flatten().collect())
}

/// Squared comparison for identities between square roots.
fn squared_residual(l: C64, r: C64) -> f64 {
    residual(l * l, r * r)
}

/// Runs one identity check.
pub fn run_identity(ctx: &QDilogContext, identity: Identity, opts: &CheckOptions) -> Result<IdentityReport> {
    let tol = opts.tolerance.unwrap_or(identity.default_tolerance());
    let xs = sample_points(opts.samples.max(1));
    let b = ctx.b();
    let residuals = match identity {
        Identity::Difference => sweep(&xs, |&x| {
            let z = real(x);
            let mut out = Vec::new();
            for (name, c) in [("b", b), ("1/b", 1.0 / b)] {
                let l = ctx.phi(z - I * c / 2.0)? / ctx.phi(z + I * c / 2.0)?;
                out.push(point(name, z, residual(l, 1.0 + (2.0 * PI * c * z).exp())));
            }
            Ok(out)
        })?,
        Identity::Unitarity => {
            if !ctx.is_strong_coupling() {
                return Err(ModularError::InvalidArgument("unitarity needs |b| = 1".into()));
            }
            let xs = sample_points(opts.samples.max(10));
            sweep(&xs, |&x| Ok(vec![point("|phi|", real(x), (ctx.phi(real(x))?.norm() - 1.0).abs())]))?
        }
        Identity::BSymmetry => {
            let dual = ctx.dual();
            sweep(&xs, |&x| {
                let z = C64::new(x, 0.3 * ctx.direct_limit());
                Ok(vec![point("phi", z, residual(ctx.phi(z)?, dual.phi(z)?))])
            })?
        }
        Identity::ChiReflection => sweep(&xs, |&x| {
            let z = real(x);
            let l = ctx.chi_b(z)? / ctx.chi_b(-z)?;
            Ok(vec![point("chi_b", z, residual(l, (-PI * z / (2.0 * b)).exp()))])
        })?,
        Identity::ChiProduct => {
            let eta = ctx.eta();
            sweep(&xs, |&x| {
                let z = real(x);
                let l = ctx.chi_b(z)? * ctx.chi_b_inv(z)?;
                let r = ctx.phi((z + I * eta) / 2.0)? / ctx.phi((z - I * eta) / 2.0)?;
                Ok(vec![point("chi_b chi_1/b", z, residual(l, r))])
            })?
        }
        Identity::ChiSwap => sweep(&xs, |&x| chi_swap_residuals(ctx, x))?,
        Identity::FourierChiSquared | Identity::FourierChiProduct => {
            if opts.lambdas.is_empty() {
                return Err(ModularError::InvalidArgument("no spectral parameters given".into()));
            }
            sweep(&opts.lambdas, |&l| {
                let (lhs, rhs) = fourier_identity_sides(ctx, identity, l)?;
                Ok(vec![point("lambda", real(l), residual(lhs.value, rhs) + lhs.error)])
            })?
        }
        Identity::ProductRoutes => {
            if !ctx.product_valid() {
                return Err(ModularError::ProductRegime(b));
            }
            let mut pts = xs.clone();
            pts.push(0.3);
            sweep(&pts, |&x| {
                let z = real(x);
                let lp = ctx.log_phi(z)?;
                let lc = ctx.log_chi(ChiKind::B, z)?;
                Ok(vec![
                    point("phi", z, residual(lp.exp(), ctx.phi_product(z)?)),
                    point("sqrt(phi) chi_b", z, residual((lp / 2.0 + lc).exp(), ctx.sqrt_phi_chi_product(z)?)),
                    point("chi_b / sqrt(phi)", z, residual((lc - lp / 2.0).exp(), ctx.chi_over_sqrt_phi_product(z)?)),
                ])
            })?
        }
        Identity::KernelSymmetry => {
            let dual = ctx.dual();
            sweep(&kernel_points(opts.samples), |p| {
                let k = kernel_eval(ctx, p)?;
                let kd = kernel_eval(&dual, p)?;
                Ok(vec![kernel_point(p, residual(k.value, kd.value))])
            })?
        }
        Identity::KernelConvergence => {
            let fine = ctx.refined();
            sweep(&kernel_points(opts.samples), |p| {
                let k = kernel_eval(ctx, p)?;
                let kf = kernel_eval(&fine, p)?;
                Ok(vec![kernel_point(p, residual(k.value, kf.value))])
            })?
        }
        Identity::KernelRelation => sweep(&relation_points(ctx, opts.samples), |&(bra, s2p)| {
            let (lhs, first, second) = raising_relation_terms(ctx, bra, s2p)?;
            let scale = lhs.norm().max(first.norm()).max(second.norm());
            Ok(vec![point("a+ relation", bra[0], (lhs - first - second).norm() / scale)])
        })?,
    };
    Ok(IdentityReport::new(identity, ctx, tol, residuals))
}

fn chi_swap_residuals(ctx: &QDilogContext, x: f64) -> Result<Vec<SampleResidual>> {
    let z = real(x);
    let b = ctx.b();
    let mut out = Vec::new();
    for (kind, c) in [(ChiKind::B, b), (ChiKind::BInv, 1.0 / b)] {
        let name = if kind == ChiKind::B { "chi_b" } else { "chi_1/b" };
        // first equation, shift ic/2: inside the strip, no continuation
        let l = ctx.chi(kind, z - I * c / 2.0)? / ctx.chi(kind, z + I * c / 2.0)?;
        let e = I * (PI * c * z).exp();
        out.push(point(format!("{name} first"), z, squared_residual(l, ((1.0 + e) / (1.0 - e)).sqrt())));
        // second equation, shift i/c: continued squares
        let l2 = ctx.chi_sq(kind, z - I / c)? / ctx.chi_sq(kind, z + I / c)?;
        let r2 = (1.0 + (2.0 * PI * (z + I / (2.0 * c)) / c).exp())
            / (1.0 + (2.0 * PI * (z - I / (2.0 * c)) / c).exp());
        out.push(point(format!("{name} second"), z, residual(l2, r2)));
    }
    Ok(out)
}

/// Both sides of a Fourier identity at spectral parameter `λ`.
///
/// The integrands tend to one as `σ → -∞`, so the integral is taken in the
/// Abel sense (continued from `Im λ > 0`): `∫_{-∞}^0 (f - 1) e^{-2πiσλ} dσ
/// + i/(2πλ) + ∫_0^∞ f e^{-2πiσλ} dσ`.
pub fn fourier_identity_sides(ctx: &QDilogContext, identity: Identity, lambda: f64) -> Result<(Estimate, C64)> {
    if lambda == 0.0 || !lambda.is_finite() {
        return Err(ModularError::InvalidArgument(format!("lambda must be nonzero, got {lambda}")));
    }
    let b = ctx.b();
    let eta = ctx.eta();
    let pb = ctx.chi_decay_height(ChiKind::B);
    let (f, left_rate, right_rate): (Box<dyn Fn(f64) -> Result<C64> + Sync>, f64, f64) = match identity {
        Identity::FourierChiSquared => {
            (Box::new(|x| Ok(ctx.chi_b(real(x))?.powi(2))), 2.0 * pb, PI * (1.0 / b).re)
        }
        Identity::FourierChiProduct => (
            Box::new(|x| Ok(ctx.chi_b(real(x))? * ctx.chi_b_inv(real(x))?)),
            2.0 * pb.min(ctx.chi_decay_height(ChiKind::BInv)),
            PI * ctx.strip_half_width(),
        ),
        other => return Err(ModularError::InvalidArgument(format!("{other} is not a Fourier identity"))),
    };
    let phase = |x: f64| (-2.0 * PI * I * x * lambda).exp();
    let tol = ctx.quadrature().tolerance();
    let cut = 45.0;
    let (lo, hi) = (-cut / left_rate, cut / right_rate);
    let left = integrate(|x| Ok((f(x)? - 1.0) * phase(x)), lo, 0.0, lo.abs().ceil() as usize, tol)?;
    let right = integrate(|x| Ok(f(x)? * phase(x)), 0.0, hi, hi.ceil() as usize, tol)?;
    let mut lhs = left + right;
    lhs.value += I / (2.0 * PI * lambda);

    let rhs = match identity {
        Identity::FourierChiSquared => {
            (-(PI / 2.0) / b * (2.0 * lambda - I * eta)).exp() * ctx.chi_sq(ChiKind::B, I * eta - 2.0 * lambda)?
                / (PI * b * lambda).cosh()
        }
        _ => {
            2.0 * (-I * PI * eta * eta / 2.0).exp() * ctx.phi(real(2.0 * lambda))?
                / ctx.phi(2.0 * lambda - I * eta)?
                * (2.0 * PI * lambda * eta).exp()
        }
    };
    Ok((lhs, rhs))
}

/// Conserving real kernel sample points.
pub fn kernel_points(n: usize) -> Vec<KernelPoint> {
    let base = [
        ([0.3, -0.2, 0.5], 0.15),
        ([-0.4, 0.25, 0.1], -0.3),
        ([0.6, 0.45, -0.35], 0.2),
        ([0.0, 0.0, 0.0], 0.0),
        ([-0.7, -0.5, 0.9], 0.4),
    ];
    base.iter()
        .cycle()
        .take(n.max(1))
        .enumerate()
        .map(|(k, (s, s2p))| {
            let d = 0.11 * (k / base.len()) as f64;
            let s = [s[0] + d, s[1] - d, s[2]];
            KernelPoint::new(s, [s[0] + s[1] - s2p, *s2p, s[1] + s[2] - s2p])
        })
        .collect()
}

fn kernel_point(p: &KernelPoint, r: f64) -> SampleResidual {
    SampleResidual {
        label: format!("sigma={:?} sigma'={:?}", p.sigma, p.sigma_p),
        point: [p.sigma[0], p.sigma[1]],
        residual: r,
    }
}

/// Complex points for the intertwining relation. The bra carries imaginary
/// parts `(Y, y2, Y)` and `σ2'` carries `Y + y2 - Re b`, chosen so that the
/// three kernels involved keep every dilogarithm argument inside the strip
/// and every `u` integrand decaying.
pub fn relation_points(ctx: &QDilogContext, n: usize) -> Vec<([C64; 3], C64)> {
    let s = ctx.strip_half_width();
    let rho = ctx.b().re;
    let y = rho - 0.3 * s;
    let y2 = (rho - s).max(0.0) + 0.15 * s;
    let reals = [([0.3, -0.2, 0.5], 0.15), ([-0.25, 0.4, 0.1], -0.2), ([0.1, 0.05, -0.45], 0.35)];
    reals
        .iter()
        .cycle()
        .take(n.max(1))
        .map(|(x, x2p)| {
            (
                [C64::new(x[0], y), C64::new(x[1], y2), C64::new(x[2], y)],
                C64::new(*x2p, y + y2 - rho),
            )
        })
        .collect()
}
