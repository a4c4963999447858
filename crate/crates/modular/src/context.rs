//! Coupling parameter, derived constants and quadrature settings.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::quadrature::{FourierGrid, Tolerance};
use crate::{ModularError, Result, I};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    /// Bisection budget for adaptive Gauss–Kronrod integrals.
    pub max_subdivisions: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Height of the Fourier contour above (and below) the real axis. `None`
    /// places it halfway to the nearest pole.
    pub contour_offset: Option<f64>,
    /// Trapezoid sums are sized so that discretization and truncation errors
    /// are about `exp(-trapezoid_exponent)`.
    pub trapezoid_exponent: f64,
    /// Direct evaluation is used for `|Im z|` up to this fraction of the
    /// strip half-width; beyond it the difference equations take over.
    pub strip_fraction: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            max_subdivisions: 2000,
            abs_tol: 1e-13,
            rel_tol: 1e-12,
            contour_offset: None,
            trapezoid_exponent: 50.0,
            strip_fraction: 0.85,
        }
    }
}

impl QuadratureSettings {
    /// Tighter settings for self-convergence checks. The relative tolerance
    /// is kept: the default already sits near the noise of the integrands.
    pub fn refined(&self) -> Self {
        Self {
            max_subdivisions: self.max_subdivisions * 2,
            abs_tol: self.abs_tol / 10.0,
            rel_tol: self.rel_tol,
            contour_offset: self.contour_offset,
            trapezoid_exponent: self.trapezoid_exponent * 1.4,
            strip_fraction: self.strip_fraction,
        }
    }

    pub(crate) fn tolerance(&self) -> Tolerance {
        Tolerance { abs: self.abs_tol, rel: self.rel_tol, max_subdivisions: self.max_subdivisions }
    }
}

/// Which boundary wave function: `χ^{(1)} = χ_b` or `χ^{(2)} = χ_{1/b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ChiKind {
    B,
    BInv,
}

impl ChiKind {
    /// Boundary index 1 or 2.
    pub fn from_index(s: u8) -> Option<Self> {
        match s {
            1 => Some(ChiKind::B),
            2 => Some(ChiKind::BInv),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct ContourPair {
    pub upper: FourierGrid,
    pub lower: FourierGrid,
}

#[derive(Clone, Debug)]
pub(crate) struct Grids {
    pub phi: ContourPair,
    pub chi_b: ContourPair,
    pub chi_b_inv: ContourPair,
}

/// Everything needed to evaluate `φ`, `χ_b` and the kernel at a fixed `b`.
/// Trapezoid grids are built on first use.
#[derive(Clone, Debug)]
pub struct QDilogContext {
    b: C64,
    quadrature: QuadratureSettings,
    product_tolerance: f64,
    grids: OnceLock<Grids>,
}

impl QDilogContext {
    pub fn new(b: C64) -> Result<Self> {
        Self::with_settings(b, QuadratureSettings::default())
    }

    pub fn with_settings(b: C64, quadrature: QuadratureSettings) -> Result<Self> {
        if !(b.re > 0.0) || !b.im.is_finite() {
            return Err(ModularError::InvalidB(b));
        }
        if !(quadrature.strip_fraction > 0.0 && quadrature.strip_fraction < 1.0)
            || !(quadrature.trapezoid_exponent >= 10.0)
        {
            return Err(ModularError::Settings(format!("{quadrature:?}")));
        }
        let ctx = Self { b, quadrature, product_tolerance: 1e-17, grids: OnceLock::new() };
        for (name, p) in [("phi", ctx.phi_pole_height()), ("chi", ctx.chi_pole_height(ChiKind::B)),
            ("chi dual", ctx.chi_pole_height(ChiKind::BInv))]
        {
            let eps = ctx.quadrature.contour_offset.unwrap_or(p / 2.0);
            if !(eps > 0.0 && eps < p) {
                return Err(ModularError::Settings(format!(
                    "contour offset {eps} must lie in (0, {p}) for {name}"
                )));
            }
        }
        Ok(ctx)
    }

    /// `b = e^{iθ}`, the strong-coupling circle.
    pub fn unimodular(theta: f64) -> Result<Self> {
        Self::new(C64::from_polar(1.0, theta))
    }

    /// Default strong-coupling point `b = e^{iπ/5}`.
    pub fn default_strong() -> Self {
        Self::unimodular(PI / 5.0).expect("valid b")
    }

    /// Default point with convergent infinite products, `b = 0.8 + 0.3i`.
    pub fn default_product() -> Self {
        Self::new(C64::new(0.8, 0.3)).expect("valid b")
    }

    /// The same settings at `1/b`.
    pub fn dual(&self) -> Self {
        Self::with_settings(1.0 / self.b, self.quadrature.clone()).expect("1/b is valid")
    }

    pub fn refined(&self) -> Self {
        Self::with_settings(self.b, self.quadrature.refined()).expect("refined settings")
    }

    pub fn b(&self) -> C64 {
        self.b
    }

    pub fn quadrature(&self) -> &QuadratureSettings {
        &self.quadrature
    }

    pub fn product_tolerance(&self) -> f64 {
        self.product_tolerance
    }

    /// `η = (b + 1/b)/2`.
    pub fn eta(&self) -> C64 {
        (self.b + 1.0 / self.b) / 2.0
    }

    /// `q = e^{iπb²}`.
    pub fn q(&self) -> C64 {
        (I * PI * self.b * self.b).exp()
    }

    /// `q̃ = e^{iπ/b²}`.
    pub fn q_tilde(&self) -> C64 {
        (I * PI / (self.b * self.b)).exp()
    }

    /// `q̄ = e^{-iπ/b²}`.
    pub fn q_bar(&self) -> C64 {
        (-I * PI / (self.b * self.b)).exp()
    }

    /// `|b| = 1`.
    pub fn is_strong_coupling(&self) -> bool {
        (self.b.norm() - 1.0).abs() < 1e-12
    }

    /// `Im b² > 0`, so that `|q| < 1` and `|q̄| < 1`.
    pub fn product_valid(&self) -> bool {
        (self.b * self.b).im > 0.0
    }

    /// Half-width `(Re b + Re 1/b)/2` of the strip where the integral
    /// representations converge.
    pub fn strip_half_width(&self) -> f64 {
        (self.b.re + (1.0 / self.b).re) / 2.0
    }

    /// Largest `|Im z|` evaluated directly.
    pub fn direct_limit(&self) -> f64 {
        self.quadrature.strip_fraction * self.strip_half_width()
    }

    pub(crate) fn chi_parameter(&self, kind: ChiKind) -> C64 {
        match kind {
            ChiKind::B => self.b,
            ChiKind::BInv => 1.0 / self.b,
        }
    }

    fn phi_pole_height(&self) -> f64 {
        PI * self.b.re.min((1.0 / self.b).re)
    }

    fn chi_pole_height(&self, kind: ChiKind) -> f64 {
        let c = self.chi_parameter(kind);
        PI * (1.0 / c).re.min(c.re / 2.0)
    }

    /// Nearest singularity of `χ - 1` above the real axis in the Fourier
    /// variable, which sets the decay rate `e^{2pσ}` of `χ(σ) - 1` as `σ → -∞`.
    pub(crate) fn chi_decay_height(&self, kind: ChiKind) -> f64 {
        self.chi_pole_height(kind)
    }

    pub(crate) fn grids(&self) -> &Grids {
        self.grids.get_or_init(|| {
            let b = self.b;
            let phi = self.contour_pair(self.phi_pole_height(), move |w| {
                1.0 / (4.0 * w * (w * b).sinh() * (w / b).sinh())
            });
            let chi = |kind| {
                let c = self.chi_parameter(kind);
                self.contour_pair(self.chi_pole_height(kind), move |w| {
                    1.0 / (8.0 * w * (w * c).sinh() * (w / c).cosh())
                })
            };
            Grids { phi, chi_b: chi(ChiKind::B), chi_b_inv: chi(ChiKind::BInv) }
        })
    }

    fn contour_pair(&self, pole: f64, weight: impl Fn(C64) -> C64 + Copy) -> ContourPair {
        let x = self.quadrature.trapezoid_exponent;
        let eps = self.quadrature.contour_offset.unwrap_or(pole / 2.0);
        let d = eps.min(pole - eps);
        let h = 2.0 * PI * d / x;
        // integrand decays like exp(-2(s - |Im z|)|Re w|)
        let s = self.strip_half_width();
        let half = x / (2.0 * (s - self.direct_limit()));
        let count = (2.0 * half / h).ceil() as usize + 1;
        ContourPair {
            upper: FourierGrid::new(C64::new(-half, eps), h, count, weight),
            lower: FourierGrid::new(C64::new(-half, -eps), h, count, weight),
        }
    }
}

impl Serialize for QDilogContext {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct View<'a> {
            b: [f64; 2],
            quadrature: &'a QuadratureSettings,
            product_tolerance: f64,
        }
        View { b: [self.b.re, self.b.im], quadrature: &self.quadrature, product_tolerance: self.product_tolerance }
            .serialize(s)
    }
}
