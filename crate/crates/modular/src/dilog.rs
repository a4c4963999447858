//! `φ`, `χ_b` and `χ_{1/b}`: Fourier-integral evaluation, continuation by
//! difference equations, and infinite-product formulas.
//!
//! `log φ(z) = ¼ ∫_{R+i0} e^{-2izw} / (sinh(wb) sinh(w/b)) dw/w` and
//! `log χ_c(σ) = ⅛ ∫_{R+i0} e^{-2iσw} / (sinh(wc) cosh(w/c)) dw/w`.
//! For `Re z >= 0` the contour is moved below the pole at `w = 0`, picking
//! up the residue, so the sampled exponentials never exceed one in size.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use crate::context::{ChiKind, ContourPair, QDilogContext};
use crate::{ln_1p_exp, ModularError, Result, I};

/// Shifts allowed before a continuation gives up.
const MAX_SHIFTS: usize = 64;

fn contour_sum(pair: &ContourPair, z: C64, residue: impl FnOnce() -> C64) -> C64 {
    if z.re < 0.0 {
        pair.upper.transform(z)
    } else {
        pair.lower.transform(z) + residue()
    }
}

impl QDilogContext {
    fn check_direct(&self, z: C64) -> Result<()> {
        let limit = self.direct_limit();
        if z.im.abs() > limit || !z.re.is_finite() {
            return Err(ModularError::OutsideStrip { z, limit });
        }
        Ok(())
    }

    /// `log φ(z)` from the integral, for `|Im z| <= direct_limit()`. This is
    /// the logarithm continuous in `z` and vanishing as `Re z → -∞`, so
    /// `exp(log_phi/2)` is the continuity-tracked square root.
    pub fn log_phi(&self, z: C64) -> Result<C64> {
        self.check_direct(z)?;
        let b2 = self.b() * self.b();
        Ok(contour_sum(&self.grids().phi, z, || {
            I * PI * z * z + I * PI * (b2 + 1.0 / b2) / 12.0
        }))
    }

    /// `φ(z)` anywhere off its poles and zeros.
    pub fn phi(&self, z: C64) -> Result<C64> {
        Ok(self.log_phi_continued(z)?.exp())
    }

    /// A logarithm of `φ(z)`: the integral value inside the strip, plus
    /// principal logarithms of the difference-equation factors outside.
    pub fn log_phi_continued(&self, mut z: C64) -> Result<C64> {
        let start = z;
        let limit = self.direct_limit();
        let shifts = [self.b(), 1.0 / self.b()];
        let mut acc = C64::new(0.0, 0.0);
        for _ in 0..MAX_SHIFTS {
            if z.im.abs() <= limit {
                return Ok(acc + self.log_phi(z)?);
            }
            let down = z.im > 0.0;
            // the shift landing closest to the real axis
            let c = *shifts
                .iter()
                .min_by(|x, y| {
                    let m = |c: &C64| if down { (z.im - c.re).abs() } else { (z.im + c.re).abs() };
                    m(x).total_cmp(&m(y))
                })
                .unwrap();
            // φ(z ∓ ic/2 ± ic/2) relation: φ(w - ic/2) = φ(w + ic/2) (1 + e^{2πcw})
            let (w, next) = if down { (z - I * c / 2.0, z - I * c) } else { (z + I * c / 2.0, z + I * c) };
            let x = 2.0 * PI * c * w;
            let f = ln_1p_exp(x);
            if !f.re.is_finite() {
                return Err(ModularError::Singular { function: "phi", z: start });
            }
            acc += if down { -f } else { f };
            z = next;
        }
        Err(ModularError::Continuation { function: "phi", z: start })
    }

    /// `log χ(σ)` from the integral, for `|Im σ| <= direct_limit()`.
    pub fn log_chi(&self, kind: ChiKind, s: C64) -> Result<C64> {
        self.check_direct(s)?;
        let c = self.chi_parameter(kind);
        let pair = match kind {
            ChiKind::B => &self.grids().chi_b,
            ChiKind::BInv => &self.grids().chi_b_inv,
        };
        Ok(contour_sum(pair, s, || -PI * s / (2.0 * c)))
    }

    /// `χ(σ)` inside the strip.
    pub fn chi(&self, kind: ChiKind, s: C64) -> Result<C64> {
        Ok(self.log_chi(kind, s)?.exp())
    }

    pub fn chi_b(&self, s: C64) -> Result<C64> {
        self.chi(ChiKind::B, s)
    }

    pub fn chi_b_inv(&self, s: C64) -> Result<C64> {
        self.chi(ChiKind::BInv, s)
    }

    /// `χ(σ)²` anywhere, continued with the first difference equation
    /// `χ_c(τ - ic/2)² / χ_c(τ + ic/2)² = (1 + i e^{πcτ}) / (1 - i e^{πcτ})`.
    pub fn chi_sq(&self, kind: ChiKind, s: C64) -> Result<C64> {
        let start = s;
        let c = self.chi_parameter(kind);
        let limit = self.direct_limit();
        let ln_r = |t: C64| -> Result<C64> {
            let e = I * (PI * c * t).exp();
            let (num, den) = (1.0 + e, 1.0 - e);
            if num.norm() == 0.0 || den.norm() == 0.0 || !e.re.is_finite() {
                return Err(ModularError::Singular { function: "chi", z: start });
            }
            Ok(num.ln() - den.ln())
        };
        let mut s = s;
        let mut acc = C64::new(0.0, 0.0);
        for _ in 0..MAX_SHIFTS {
            if s.im.abs() <= limit {
                return Ok((acc + 2.0 * self.log_chi(kind, s)?).exp());
            }
            if s.im > 0.0 {
                acc -= ln_r(s - I * c / 2.0)?;
                s -= I * c;
            } else {
                acc += ln_r(s + I * c / 2.0)?;
                s += I * c;
            }
        }
        Err(ModularError::Continuation { function: "chi", z: start })
    }

    fn require_products(&self) -> Result<()> {
        if self.product_valid() {
            Ok(())
        } else {
            Err(ModularError::ProductRegime(self.b()))
        }
    }

    /// `φ(z) = (-q e^{2πbz}; q²)_∞ / (-q̄ e^{2πz/b}; q̄²)_∞`.
    pub fn phi_product(&self, z: C64) -> Result<C64> {
        self.require_products()?;
        let (b, q, qb, tol) = (self.b(), self.q(), self.q_bar(), self.product_tolerance());
        let num = qpoch(-q * (2.0 * PI * b * z).exp(), q * q, tol);
        let den = qpoch(-qb * (2.0 * PI * z / b).exp(), qb * qb, tol);
        Ok(num / den)
    }

    // (q^{1/2} e^{πbσ}, e^{2πσ/b}) for the χ_b products
    fn chi_product_args(&self, s: C64) -> (C64, C64) {
        let b = self.b();
        let sqrt_q = (I * PI * b * b / 2.0).exp();
        (sqrt_q * (PI * b * s).exp(), (2.0 * PI * s / b).exp())
    }

    /// `√φ(σ) χ_b(σ) = (-i q^{1/2} e^{πbσ}; q)_∞ / (-q̄ e^{2πσ/b}; q̄⁴)_∞`.
    pub fn sqrt_phi_chi_product(&self, s: C64) -> Result<C64> {
        self.require_products()?;
        let (x, wb) = self.chi_product_args(s);
        let (q, qb, tol) = (self.q(), self.q_bar(), self.product_tolerance());
        Ok(qpoch(-I * x, q, tol) / qpoch(-qb * wb, qb.powi(4), tol))
    }

    /// `χ_b(σ) / √φ(σ) = (-q̄³ e^{2πσ/b}; q̄⁴)_∞ / (i q^{1/2} e^{πbσ}; q)_∞`.
    pub fn chi_over_sqrt_phi_product(&self, s: C64) -> Result<C64> {
        self.require_products()?;
        let (x, wb) = self.chi_product_args(s);
        let (q, qb, tol) = (self.q(), self.q_bar(), self.product_tolerance());
        Ok(qpoch(-qb.powi(3) * wb, qb.powi(4), tol) / qpoch(I * x, q, tol))
    }

    /// `χ_b(σ)²` as the product of the two formulas above.
    pub fn chi_b_sq_product(&self, s: C64) -> Result<C64> {
        Ok(self.sqrt_phi_chi_product(s)? * self.chi_over_sqrt_phi_product(s)?)
    }
}

/// `(x; q)_∞ = ∏_{k>=0} (1 - x q^k)` for `|q| < 1`, stopping once
/// `|x q^k| < tol`.
pub fn qpoch(x: C64, q: C64, tol: f64) -> C64 {
    assert!(q.norm() < 1.0, "|q| must be below 1");
    let mut acc = C64::new(1.0, 0.0);
    let mut t = x;
    while t.norm() >= tol {
        acc *= 1.0 - t;
        t *= q;
    }
    acc
}
