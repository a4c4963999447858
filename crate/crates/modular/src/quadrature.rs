//! Quadrature: equispaced Fourier sums for contour integrals, and adaptive
//! Gauss–Kronrod for complex integrands on finite intervals.

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::ModularError;

/// Weighted samples at `w_k = w_0 + k h` (complex `w_0`, real `h`), used to
/// evaluate `Σ_k g_k exp(-2 i z w_k)` for many `z`.
#[derive(Clone, Debug)]
pub struct FourierGrid {
    start: C64,
    step: f64,
    weights: Vec<C64>,
}

/// The running exponential is recomputed from scratch this often, which
/// bounds the rounding drift of the geometric recurrence.
const RESEED: usize = 128;

impl FourierGrid {
    /// `count` samples of `weight(w_k)`, each already multiplied by the step.
    pub fn new(start: C64, step: f64, count: usize, weight: impl Fn(C64) -> C64) -> Self {
        let weights = (0..count)
            .map(|k| weight(start + k as f64 * step) * step)
            .collect();
        Self { start, step, weights }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// `Σ_k g_k exp(-2 i z w_k)`.
    pub fn transform(&self, z: C64) -> C64 {
        let minus_2iz = C64::new(0.0, -2.0) * z;
        let ratio = (minus_2iz * self.step).exp();
        let mut acc = C64::new(0.0, 0.0);
        for (c, chunk) in self.weights.chunks(RESEED).enumerate() {
            let w = self.start + (c * RESEED) as f64 * self.step;
            let mut e = (minus_2iz * w).exp();
            for g in chunk {
                acc += g * e;
                e *= ratio;
            }
        }
        acc
    }
}

/// An integral value with its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Estimate {
    pub value: C64,
    pub error: f64,
}

impl Estimate {
    pub fn zero() -> Self {
        Self { value: C64::new(0.0, 0.0), error: 0.0 }
    }
}

impl std::ops::Add for Estimate {
    type Output = Estimate;
    fn add(self, o: Estimate) -> Estimate {
        Estimate { value: self.value + o.value, error: self.error + o.error }
    }
}

/// Stopping rule for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_subdivisions: usize,
}

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for the 7-point rule, living on XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// A panel estimate together with `∫|f|`, which bounds the rounding error.
#[derive(Clone, Copy)]
struct Panel {
    est: Estimate,
    mass: f64,
}

fn kronrod15<F>(f: &F, a: f64, b: f64) -> Result<Panel, ModularError>
where
    F: Fn(f64) -> Result<C64, ModularError>,
{
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut kron = C64::new(0.0, 0.0);
    let mut gauss = C64::new(0.0, 0.0);
    let mut mass = 0.0;
    for j in 0..7 {
        let x = r * XGK[j];
        let (lo, hi) = (f(c - x)?, f(c + x)?);
        let s = lo + hi;
        kron += s * WGK[j];
        mass += (lo.norm() + hi.norm()) * WGK[j];
        if j % 2 == 1 {
            gauss += s * WG[j / 2];
        }
    }
    let fc = f(c)?;
    kron += fc * WGK[7];
    gauss += fc * WG[3];
    mass += fc.norm() * WGK[7];
    Ok(Panel {
        est: Estimate { value: kron * r, error: ((kron - gauss) * r).norm() },
        mass: mass * r.abs(),
    })
}

/// Globally adaptive 7/15-point Gauss–Kronrod quadrature of a complex
/// integrand over `[a, b]`, starting from `panels` equal pieces. The
/// interval with the largest error estimate is bisected until the total
/// error meets the tolerance, or falls to the rounding level `50 ε ∫|f|`.
pub fn integrate<F>(f: F, a: f64, b: f64, panels: usize, tol: Tolerance) -> Result<Estimate, ModularError>
where
    F: Fn(f64) -> Result<C64, ModularError>,
{
    if a == b {
        return Ok(Estimate::zero());
    }
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut pieces = Vec::with_capacity(panels + tol.max_subdivisions);
    for k in 0..panels {
        let lo = a + k as f64 * width;
        let hi = if k + 1 == panels { b } else { lo + width };
        pieces.push((lo, hi, kronrod15(&f, lo, hi)?));
    }
    let mut splits = 0;
    loop {
        let total = pieces.iter().fold(Estimate::zero(), |acc, p| acc + p.2.est);
        let mass: f64 = pieces.iter().map(|p| p.2.mass).sum();
        let roundoff = 50.0 * f64::EPSILON * mass;
        if total.error <= tol.abs.max(tol.rel * total.value.norm()).max(roundoff) {
            return Ok(total);
        }
        if splits >= tol.max_subdivisions {
            return Err(ModularError::Quadrature { value: total.value, error: total.error });
        }
        let (worst, _) = pieces
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .2.est.error.total_cmp(&y.1 .2.est.error))
            .expect("nonempty");
        let (lo, hi, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        pieces.push((lo, mid, kronrod15(&f, lo, mid)?));
        pieces.push((mid, hi, kronrod15(&f, mid, hi)?));
        splits += 1;
    }
}
