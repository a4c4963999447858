//! Integral kernel of the modular 3D R operator and the resulting
//! matrix elements of the boundary-reduced `S(λ)`.
//!
//! `⟨σ1,σ2,σ3|R|σ1',σ2',σ3'⟩ = δ(σ1+σ2-σ1'-σ2') δ(σ2+σ3-σ2'-σ3') K`, with
//! `K = √(φ(σ1)φ(σ2)φ(σ3)/φ(σ1')φ(σ2')φ(σ3')) J` and
//! `J = e^{-iπ(σ1σ3 - iη(σ1+σ3-σ2'))} ∫ du e^{2πiu(σ2'-iη)}
//!      φ(u+(σ1'+σ3'+iη)/2) φ(u+(-σ1-σ3+iη)/2) / φ(u+(σ1-σ3-iη)/2) φ(u+(-σ1+σ3-iη)/2)`.
//! Everything here works with `K` and `J`; the delta functions are implied.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::context::{ChiKind, QDilogContext};
use crate::quadrature::{integrate, Estimate, Tolerance};
use crate::{ModularError, Result, I};

/// Conservation is tested to this absolute tolerance.
pub const CONSERVATION_TOL: f64 = 1e-12;

/// Tail length factor: integrands are cut where they fall below `e^{-TAIL}`
/// of their asymptotic envelope.
const TAIL: f64 = 40.0;

/// Minimum exponential decay rate accepted for the `u` integral.
const MIN_RATE: f64 = 0.05;

/// Real arguments `(σ1, σ2, σ3; σ1', σ2', σ3')` of the kernel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelPoint {
    pub sigma: [f64; 3],
    pub sigma_p: [f64; 3],
}

impl KernelPoint {
    pub fn new(sigma: [f64; 3], sigma_p: [f64; 3]) -> Self {
        Self { sigma, sigma_p }
    }

    /// `σ1+σ2 = σ1'+σ2'` and `σ2+σ3 = σ2'+σ3'`.
    pub fn conserves(&self) -> bool {
        let [a, b, c] = self.sigma;
        let [x, y, z] = self.sigma_p;
        (a + b - x - y).abs() <= CONSERVATION_TOL && (b + c - y - z).abs() <= CONSERVATION_TOL
    }

    fn complex(&self) -> ([C64; 3], [C64; 3]) {
        (self.sigma.map(|s| C64::new(s, 0.0)), self.sigma_p.map(|s| C64::new(s, 0.0)))
    }
}

/// `J` at complex arguments, which must conserve. The straight `u` contour
/// is only used while every `φ` argument stays inside the direct strip and
/// the integrand decays at both ends; otherwise an error is returned rather
/// than a value on the wrong sheet.
pub fn reduced_kernel(ctx: &QDilogContext, s: [C64; 3], sp: [C64; 3]) -> Result<Estimate> {
    let eta = ctx.eta();
    let limit = ctx.direct_limit();
    let num = [(sp[0] + sp[2] + I * eta) / 2.0, (-s[0] - s[2] + I * eta) / 2.0];
    let den = [(s[0] - s[2] - I * eta) / 2.0, (-s[0] + s[2] - I * eta) / 2.0];
    if let Some(c) = num.iter().chain(&den).find(|c| c.im.abs() > limit) {
        return Err(ModularError::InvalidArgument(format!(
            "kernel shift {c} leaves the strip |Im| <= {limit}; the u contour would need deforming"
        )));
    }
    // log φ(z) ~ iπz² as Re z → +∞ and → 0 as Re z → -∞
    let freq = sp[1] - I * eta;
    let rate_left = 2.0 * PI * (eta.re - sp[1].im);
    let rate_right = 2.0 * PI * (sp[1] + (sp[0] + sp[2] - s[0] - s[2]) / 2.0 + I * eta).im;
    if rate_left < MIN_RATE || rate_right < MIN_RATE {
        return Err(ModularError::InvalidArgument(format!(
            "kernel u integral does not decay (rates {rate_left}, {rate_right})"
        )));
    }
    // the prefactor goes inside so that tolerances refer to J itself
    let log_pre = -I * PI * (s[0] * s[2] - I * eta * (s[0] + s[2] - sp[1]));
    let integrand = |u: f64| -> Result<C64> {
        let u = C64::new(u, 0.0);
        let mut l = log_pre + 2.0 * PI * I * u * freq;
        for c in num {
            l += ctx.log_phi(u + c)?;
        }
        for c in den {
            l -= ctx.log_phi(u + c)?;
        }
        Ok(l.exp())
    };
    // each φ(u + c) switches between its two asymptotic regimes near u = -Re c
    let centers = num.iter().chain(&den).map(|c| -c.re);
    let lo = centers.clone().fold(f64::INFINITY, f64::min) - TAIL / rate_left;
    let hi = centers.fold(f64::NEG_INFINITY, f64::max) + TAIL / rate_right;
    let panels = (hi - lo).ceil() as usize;
    integrate(integrand, lo, hi, panels, ctx.quadrature().tolerance())
}

/// `K` at real arguments; zero when conservation fails. The square root
/// is `exp(½ Σ ±log φ)` with the integral logarithm, i.e. continued from
/// the point where the ratio equals one.
pub fn kernel_eval(ctx: &QDilogContext, p: &KernelPoint) -> Result<Estimate> {
    if !p.conserves() {
        return Ok(Estimate::zero());
    }
    let (s, sp) = p.complex();
    let mut half_log = C64::new(0.0, 0.0);
    for k in 0..3 {
        half_log += ctx.log_phi(s[k])? - ctx.log_phi(sp[k])?;
    }
    let pre = (half_log / 2.0).exp();
    let j = reduced_kernel(ctx, s, sp)?;
    Ok(Estimate { value: j.value * pre, error: j.error * pre.norm() })
}

/// The three terms of `⟨σ|R a⁺₂|σ'⟩ = ⟨σ|(a⁺₁a⁺₃ - k₁k₃a⁺₂) R|σ'⟩` with
/// the common square-root prefactor divided out, in the representation
/// `k = -i e^{πbσ}`, `a⁺ = (1 - q⁻¹k²)^{1/2} w`, `⟨σ|w = ⟨σ-ib|`,
/// `w|σ⟩ = |σ+ib⟩`:
///
/// `(1 + q e^{2πbσ2'}) J(σ; σ1',σ2'+ib,σ3')`
/// `= (1 + q⁻¹e^{2πbσ1})(1 + q⁻¹e^{2πbσ3}) J(σ1-ib,σ2,σ3-ib; σ')`
/// `+ e^{πb(σ1+σ3)} (1 + q⁻¹e^{2πbσ2}) J(σ1,σ2-ib,σ3; σ')`.
///
/// `bra` and `sigma2_p` are complex; `σ1'`, `σ3'` are fixed by conservation.
/// Returns `(lhs, first, second)`.
pub fn raising_relation_terms(
    ctx: &QDilogContext,
    bra: [C64; 3],
    sigma2_p: C64,
) -> Result<(C64, C64, C64)> {
    let b = ctx.b();
    let ib = I * b;
    let q = ctx.q();
    let [s1, s2, s3] = bra;
    let sp = [s1 + s2 - sigma2_p - ib, sigma2_p, s2 + s3 - sigma2_p - ib];
    let e = |x: C64| (2.0 * PI * b * x).exp();
    let lhs = (1.0 + q * e(sp[1])) * reduced_kernel(ctx, bra, [sp[0], sp[1] + ib, sp[2]])?.value;
    let first = (1.0 + e(s1) / q) * (1.0 + e(s3) / q) * reduced_kernel(ctx, [s1 - ib, s2, s3 - ib], sp)?.value;
    let second = (PI * b * (s1 + s3)).exp() * (1.0 + e(s2) / q) * reduced_kernel(ctx, [s1, s2 - ib, s3], sp)?.value;
    Ok((lhs, first, second))
}

/// A matrix element of the boundary-reduced modular operator at `n = 1`:
/// `∫ dσ0 χ^{(s)}(σ0) e^{2πiλσ0} K(α,β,σ0; α',β',σ0+β-β') χ^{(t)}(σ0+β-β')`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SElementSpec {
    pub s: u8,
    pub t: u8,
    pub lambda: f64,
    /// `(α, β)` and `(α', β')`.
    pub bra: [f64; 2],
    pub ket: [f64; 2],
    /// Conjugate by `K_d`, weight `e^{πη(α - β')}`, giving the hatted element.
    pub hat: bool,
}

/// Evaluates an [`SElementSpec`].
///
/// The kernel does not decay as `σ0 → -∞`: there it tends to
/// `A e^{iωσ0} + B e^{-iωσ0}` with `ω = π(β' - α)` while both boundary
/// functions tend to one. The integral is taken in the Abel sense: numerical
/// quadrature from the point `X0` where the boundary functions have
/// converged, plus the closed-form integral of the fitted tail below `X0`.
/// The fit is validated at a third point. Spectral parameters with
/// `2πλ ± ω ≈ 0`, where the regularized integral diverges, are rejected.
pub fn modular_s_element(ctx: &QDilogContext, spec: &SElementSpec) -> Result<Estimate> {
    let (Some(cs), Some(ct)) = (ChiKind::from_index(spec.s), ChiKind::from_index(spec.t)) else {
        return Err(ModularError::InvalidArgument(format!(
            "boundary indices must be 1 or 2, got ({}, {})",
            spec.s, spec.t
        )));
    };
    let [alpha, beta] = spec.bra;
    let [alpha_p, beta_p] = spec.ket;
    if (alpha + beta - alpha_p - beta_p).abs() > CONSERVATION_TOL {
        return Ok(Estimate::zero());
    }
    let shift = beta - beta_p;
    let kernel = |x: f64| -> Result<C64> {
        let p = KernelPoint::new([alpha, beta, x], [alpha_p, beta_p, x + shift]);
        Ok(kernel_eval(ctx, &p)?.value)
    };
    let integrand = |x: f64| -> Result<C64> {
        let chis = ctx.chi(cs, C64::new(x, 0.0))?;
        let chit = ctx.chi(ct, C64::new(x + shift, 0.0))?;
        Ok(chis * (2.0 * PI * I * spec.lambda * x).exp() * kernel(x)? * chit)
    };

    // χ - 1 ~ e^{2pσ} as σ → -∞
    let p = ctx.chi_decay_height(cs).min(ctx.chi_decay_height(ct));
    let x0 = -TAIL / (2.0 * p) - shift.max(0.0);
    let tail = fit_tail(kernel, x0, PI * (beta_p - alpha))?;
    let k = 2.0 * PI * spec.lambda;
    let tail_integral = tail.abel_integral(k, x0)?;

    // K decays like e^{-πη σ0}·(bounded) on the right, χ_b as well
    let mut hi = 1.0;
    let scale = integrand(x0)?.norm().max(1.0);
    while integrand(hi)?.norm() > 1e-3 * ctx.quadrature().abs_tol * scale {
        hi *= 1.5;
        if hi > 256.0 {
            return Err(ModularError::InvalidArgument("S element integrand does not decay".into()));
        }
    }
    let panels = ((hi - x0) / 2.0).ceil() as usize;
    let body = integrate(integrand, x0, hi, panels, outer_tolerance(ctx))?;
    let mut est = Estimate {
        value: body.value + tail_integral.value,
        error: body.error + tail_integral.error,
    };
    if spec.hat {
        let w = (PI * ctx.eta() * (alpha - beta_p)).exp();
        est = Estimate { value: est.value * w, error: est.error * w.norm() };
    }
    Ok(est)
}

/// The outer integral sees kernel values that are only accurate to the
/// inner tolerance, so it asks for a thousand times less.
fn outer_tolerance(ctx: &QDilogContext) -> Tolerance {
    let t = ctx.quadrature().tolerance();
    Tolerance { abs: t.abs * 1e3, rel: t.rel * 1e3, max_subdivisions: t.max_subdivisions }
}

/// `c0 e^{iωx} + c1 e^{-iωx}`, or `c0 + c1 x` when `ω` is too small to
/// separate the two exponentials.
struct Tail {
    omega: f64,
    linear: bool,
    c: [C64; 2],
    /// Misfit at the validation point.
    misfit: f64,
}

fn fit_tail(kernel: impl Fn(f64) -> Result<C64>, x0: f64, omega: f64) -> Result<Tail> {
    let linear = omega.abs() < 1e-3;
    let step = if linear { 2.0 } else { (PI / (2.0 * omega.abs())).clamp(1.0, 8.0) };
    let basis = |x: f64| -> [C64; 2] {
        if linear {
            [C64::new(1.0, 0.0), C64::new(x, 0.0)]
        } else {
            [(I * omega * x).exp(), (-I * omega * x).exp()]
        }
    };
    let (x1, x2, x3) = (x0, x0 - step, x0 - 2.7 * step);
    let (m1, m2) = (basis(x1), basis(x2));
    let (k1, k2) = (kernel(x1)?, kernel(x2)?);
    let det = m1[0] * m2[1] - m1[1] * m2[0];
    let c = [(k1 * m2[1] - k2 * m1[1]) / det, (m1[0] * k2 - m2[0] * k1) / det];
    let m3 = basis(x3);
    let k3 = kernel(x3)?;
    let misfit = (c[0] * m3[0] + c[1] * m3[1] - k3).norm();
    let scale = k1.norm().max(k2.norm()).max(1.0);
    if misfit > 1e-6 * scale {
        return Err(ModularError::InvalidArgument(format!(
            "kernel has not reached its oscillatory asymptote at {x0} (misfit {misfit:e})"
        )));
    }
    Ok(Tail { omega, linear, c, misfit })
}

impl Tail {
    /// Abel-regularized `∫_{-∞}^{x0} tail(x) e^{ikx} dx`.
    fn abel_integral(&self, k: f64, x0: f64) -> Result<Estimate> {
        let resonance = |f: f64| -> Result<C64> {
            if f.abs() < 1e-6 {
                return Err(ModularError::InvalidArgument(format!(
                    "spectral parameter resonates with the kernel tail frequency {}",
                    self.omega
                )));
            }
            Ok(C64::new(0.0, f))
        };
        let (value, gap) = if self.linear {
            let ik = resonance(k)?;
            let e = (ik * x0).exp();
            (e * (self.c[0] / ik + self.c[1] * (x0 / ik - 1.0 / (ik * ik))), k.abs())
        } else {
            let (p, m) = (resonance(k + self.omega)?, resonance(k - self.omega)?);
            (self.c[0] * (p * x0).exp() / p + self.c[1] * (m * x0).exp() / m, p.norm().min(m.norm()))
        };
        Ok(Estimate { value, error: self.misfit / gap })
    }
}
