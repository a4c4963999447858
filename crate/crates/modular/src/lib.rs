//! Floating-point side of the tetrahedron-equation toolkit: Faddeev's
//! noncompact quantum dilogarithm `φ`, the boundary wave functions `χ_b`,
//! `χ_{1/b}`, and the integral kernel of the modular 3D R operator.
//!
//! Everything is evaluated from the defining Fourier integrals with
//! exponentially convergent trapezoid sums, continued outside the strip by
//! the difference equations. Infinite-product formulas are available as an
//! independent cross-check when `Im b² > 0`.

pub use num_complex::Complex64 as C64;
use thiserror::Error;

pub mod context;
pub mod dilog;
pub mod identities;
pub mod kernel;
pub mod quadrature;

pub use context::{ChiKind, QDilogContext, QuadratureSettings};
pub use identities::{run_identity, CheckOptions, Identity, IdentityReport, SampleResidual};
pub use kernel::{kernel_eval, modular_s_element, KernelPoint, SElementSpec};
pub use quadrature::Estimate;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModularError {
    #[error("b = {0} must have positive real part")]
    InvalidB(C64),
    #[error("invalid quadrature settings: {0}")]
    Settings(String),
    #[error("{z} lies outside the strip |Im z| <= {limit}")]
    OutsideStrip { z: C64, limit: f64 },
    #[error("infinite products need Im(b^2) > 0, got b = {0}")]
    ProductRegime(C64),
    #[error("{function} is singular at {z}")]
    Singular { function: &'static str, z: C64 },
    #[error("continuation of {function} from {z} did not reach the strip")]
    Continuation { function: &'static str, z: C64 },
    #[error("quadrature did not converge: value {value}, error {error:e}")]
    Quadrature { value: C64, error: f64 },
    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, ModularError>;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// `|l - r| / max(1, |r|)`: absolute for small values, relative for large.
pub fn residual(l: C64, r: C64) -> f64 {
    (l - r).norm() / r.norm().max(1.0)
}

/// `ln(1 + e^x)` without overflow for large `Re x`; principal branch.
pub(crate) fn ln_1p_exp(x: C64) -> C64 {
    if x.re > 30.0 {
        x + (-x).exp().ln_1p_c()
    } else {
        x.exp().ln_1p_c()
    }
}

trait Ln1p {
    fn ln_1p_c(self) -> C64;
}

impl Ln1p for C64 {
    fn ln_1p_c(self) -> C64 {
        if self.norm() < 1e-4 {
            // series keeps full relative accuracy for tiny arguments
            self - self * self / 2.0 + self * self * self / 3.0
        } else {
            (1.0 + self).ln()
        }
    }
}
