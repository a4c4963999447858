use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;
use std::sync::Arc;

use serde::Serialize;

use super::{FockError, FockIndex, FockVector};
use crate::scalar::{LaurentPoly, Scalar};

/// Elementary q-oscillator action on one tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SiteOp {
    /// `a⁺|m⟩ = |m+1⟩`
    Raise,
    /// `a⁻|m⟩ = (1 − q^{2m})|m−1⟩`
    Lower,
    /// `k^p|m⟩ = q^{p(m+1/2)}|m⟩`
    KPow(i32),
    /// `h|m⟩ = m|m⟩`
    Number,
}

impl SiteOp {
    /// Image of `|m⟩` as `(coefficient, new occupation)`, or `None` for zero.
    pub fn act(self, m: u32) -> Option<(Scalar, u32)> {
        match self {
            SiteOp::Raise => Some((Scalar::one(), m + 1)),
            SiteOp::Lower => {
                if m == 0 {
                    None
                } else {
                    let c = &LaurentPoly::one() - &LaurentPoly::u_pow(4 * m as i64);
                    Some((Scalar::from_poly(c), m - 1))
                }
            }
            SiteOp::KPow(0) => Some((Scalar::one(), m)),
            SiteOp::KPow(p) => Some((Scalar::u_pow(p as i64 * (2 * m as i64 + 1)), m)),
            SiteOp::Number => (m > 0).then(|| (Scalar::from_int(m as i64), m)),
        }
    }
}

/// A linear map given by its action on basis states.
///
/// Implementations must be pure; they are shared across worker threads.
pub trait BasisMap: Send + Sync {
    fn apply_basis(&self, idx: &FockIndex) -> FockVector;

    /// Smallest tensor arity the map can act on.
    fn min_arity(&self) -> usize;

    fn label(&self) -> String;
}

#[derive(Clone)]
pub enum Factor {
    /// Elementary operator at a 0-based position.
    Site { pos: usize, op: SiteOp },
    Map(Arc<dyn BasisMap>),
}

impl Factor {
    fn min_arity(&self) -> usize {
        match self {
            Factor::Site { pos, .. } => pos + 1,
            Factor::Map(m) => m.min_arity(),
        }
    }

    fn apply(&self, v: &FockVector) -> FockVector {
        match self {
            Factor::Site { pos, op } => {
                let mut out = FockVector::zero();
                for (idx, c) in v.terms() {
                    if let Some((s, m)) = op.act(idx.get(*pos)) {
                        let coeff = if s.is_one() { c.clone() } else { c * &s };
                        out.add_term(idx.with(*pos, m), coeff);
                    }
                }
                out
            }
            Factor::Map(m) => v.map_linear(|idx| m.apply_basis(idx)),
        }
    }

    fn shifted(&self, offset: usize) -> Option<Factor> {
        match self {
            Factor::Site { pos, op } => Some(Factor::Site { pos: pos + offset, op: *op }),
            Factor::Map(_) => None,
        }
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Site { pos, op } => match op {
                SiteOp::Raise => write!(f, "a+{}", pos + 1),
                SiteOp::Lower => write!(f, "a-{}", pos + 1),
                SiteOp::KPow(p) => write!(f, "k{}^{}", pos + 1, p),
                SiteOp::Number => write!(f, "h{}", pos + 1),
            },
            Factor::Map(m) => write!(f, "{}", m.label()),
        }
    }
}

/// Formal degree `x^x y^y` carried by an operator term. Single-variable
/// operators use `y = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ZDegree {
    pub x: i32,
    pub y: i32,
}

impl ZDegree {
    pub const ZERO: ZDegree = ZDegree { x: 0, y: 0 };

    pub fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    pub fn z(x: i32) -> Self {
        Self { x, y: 0 }
    }
}

impl Add for ZDegree {
    type Output = ZDegree;
    fn add(self, rhs: ZDegree) -> ZDegree {
        ZDegree::new(self.x + rhs.x, self.y + rhs.y)
    }
}

/// A vector resolved by formal degree. Zero components are never stored.
pub type GradedVector = BTreeMap<ZDegree, FockVector>;

#[derive(Clone, Debug)]
pub struct OpTerm {
    pub coeff: Scalar,
    pub degree: ZDegree,
    /// Product written left to right; the last factor acts first.
    pub factors: Vec<Factor>,
}

/// Finite sum of scaled products of elementary operators and basis maps.
///
/// Public constructors take 1-based site labels.
#[derive(Clone, Debug, Default)]
pub struct SparseOperator {
    terms: Vec<OpTerm>,
}

impl SparseOperator {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::scalar(Scalar::one())
    }

    pub fn scalar(c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: vec![OpTerm { coeff: c, degree: ZDegree::ZERO, factors: Vec::new() }] }
    }

    /// Elementary operator at a 1-based site.
    pub fn site(site: usize, op: SiteOp) -> Self {
        assert!(site >= 1, "sites are 1-based");
        Self {
            terms: vec![OpTerm {
                coeff: Scalar::one(),
                degree: ZDegree::ZERO,
                factors: vec![Factor::Site { pos: site - 1, op }],
            }],
        }
    }

    pub fn raise(site: usize) -> Self {
        Self::site(site, SiteOp::Raise)
    }

    pub fn lower(site: usize) -> Self {
        Self::site(site, SiteOp::Lower)
    }

    pub fn k_pow(site: usize, p: i32) -> Self {
        Self::site(site, SiteOp::KPow(p))
    }

    pub fn number(site: usize) -> Self {
        Self::site(site, SiteOp::Number)
    }

    pub fn map(m: Arc<dyn BasisMap>) -> Self {
        Self {
            terms: vec![OpTerm {
                coeff: Scalar::one(),
                degree: ZDegree::ZERO,
                factors: vec![Factor::Map(m)],
            }],
        }
    }

    pub fn terms(&self) -> &[OpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self ∘ rhs`: `rhs` acts first. Degrees add.
    pub fn compose(&self, rhs: &SparseOperator) -> SparseOperator {
        let mut terms = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                let mut factors = a.factors.clone();
                factors.extend(b.factors.iter().cloned());
                terms.push(OpTerm {
                    coeff: &a.coeff * &b.coeff,
                    degree: a.degree + b.degree,
                    factors,
                });
            }
        }
        SparseOperator { terms }
    }

    /// Composition of a list, leftmost outermost.
    pub fn product<'a, I: IntoIterator<Item = &'a SparseOperator>>(ops: I) -> SparseOperator {
        ops.into_iter().fold(Self::identity(), |acc, op| acc.compose(op))
    }

    pub fn pow(&self, n: u32) -> SparseOperator {
        (0..n).fold(Self::identity(), |acc, _| acc.compose(self))
    }

    pub fn plus(&self, rhs: &SparseOperator) -> SparseOperator {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        SparseOperator { terms }
    }

    pub fn minus(&self, rhs: &SparseOperator) -> SparseOperator {
        self.plus(&rhs.scaled(&Scalar::from_int(-1)))
    }

    pub fn scaled(&self, c: &Scalar) -> SparseOperator {
        if c.is_zero() {
            return Self::zero();
        }
        SparseOperator {
            terms: self
                .terms
                .iter()
                .map(|t| OpTerm { coeff: &t.coeff * c, ..t.clone() })
                .collect(),
        }
    }

    /// Multiplies every term by the formal monomial of degree `d`.
    pub fn with_degree(&self, d: ZDegree) -> SparseOperator {
        SparseOperator {
            terms: self
                .terms
                .iter()
                .map(|t| OpTerm { degree: t.degree + d, ..t.clone() })
                .collect(),
        }
    }

    /// Rewrites the formal degree of every term.
    pub fn map_degrees<F: Fn(ZDegree) -> ZDegree>(&self, f: F) -> SparseOperator {
        SparseOperator {
            terms: self.terms.iter().map(|t| OpTerm { degree: f(t.degree), ..t.clone() }).collect(),
        }
    }

    /// The distinct formal degrees carried by the terms.
    pub fn degrees(&self) -> std::collections::BTreeSet<ZDegree> {
        self.terms.iter().map(|t| t.degree).collect()
    }

    /// Relabels elementary factors by `offset` positions, e.g. to place an
    /// operator on the second leg of a tensor product. Fails on basis maps.
    pub fn shifted(&self, offset: usize) -> Option<SparseOperator> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let factors = t.factors.iter().map(|f| f.shifted(offset)).collect::<Option<_>>()?;
            terms.push(OpTerm { coeff: t.coeff.clone(), degree: t.degree, factors });
        }
        Some(SparseOperator { terms })
    }

    /// Smallest arity the operator can act on.
    pub fn min_arity(&self) -> usize {
        self.terms
            .iter()
            .flat_map(|t| t.factors.iter().map(Factor::min_arity))
            .max()
            .unwrap_or(0)
    }

    fn check_arity(&self, v: &FockVector) -> Result<(), FockError> {
        if let Some(n) = v.arity() {
            let need = self.min_arity();
            if need > n {
                return Err(FockError::SiteOutOfRange { site: need, arity: n });
            }
        }
        Ok(())
    }

    /// Applies the operator, keeping formal degrees apart.
    pub fn apply_graded(&self, v: &FockVector) -> Result<GradedVector, FockError> {
        self.check_arity(v)?;
        let mut out = GradedVector::new();
        for t in &self.terms {
            let mut w = v.clone();
            for f in t.factors.iter().rev() {
                if w.is_zero() {
                    break;
                }
                w = f.apply(&w);
            }
            if !w.is_zero() {
                out.entry(t.degree).or_default().add_scaled(&w, &t.coeff);
            }
        }
        out.retain(|_, w| !w.is_zero());
        Ok(out)
    }

    /// Applies the operator, summing over formal degrees.
    pub fn apply(&self, v: &FockVector) -> Result<FockVector, FockError> {
        let mut out = FockVector::zero();
        for (_, w) in self.apply_graded(v)? {
            out.add_scaled(&w, &Scalar::one());
        }
        Ok(out)
    }
}

/// Human-readable description of the first discrepancy between two graded
/// vectors, or `None` when they agree.
pub fn graded_difference(lhs: &GradedVector, rhs: &GradedVector) -> Option<String> {
    let degrees: std::collections::BTreeSet<_> = lhs.keys().chain(rhs.keys()).copied().collect();
    let empty = FockVector::zero();
    for d in degrees {
        let l = lhs.get(&d).unwrap_or(&empty);
        let r = rhs.get(&d).unwrap_or(&empty);
        if let Some(msg) = vector_difference(l, r) {
            return Some(format!("degree ({},{}): {msg}", d.x, d.y));
        }
    }
    None
}

/// Description of the first differing coefficient, or `None` when equal.
pub fn vector_difference(lhs: &FockVector, rhs: &FockVector) -> Option<String> {
    if lhs == rhs {
        return None;
    }
    let diff = lhs - rhs;
    let (idx, _) = diff.terms().next()?;
    Some(format!("at {idx:?}: lhs {} vs rhs {}", lhs.coeff(idx), rhs.coeff(idx)))
}
