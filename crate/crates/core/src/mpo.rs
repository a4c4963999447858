//! Boundary vectors and the matrix product operator
//!
//! ```text
//! S(z) = ⟨χ^{(s)}| z^{h_3} R_{α1,β1,3} R_{α2,β2,3} ⋯ R_{αn,βn,3} |χ^{(t)}⟩
//! ```
//!
//! expanded exactly order by order in `z`, its zig-zag transform
//! `Ŝ = (K⊗1) S (1⊗K⁻¹)`, and checks of the boundary fixed-point property,
//! the Yang-Baxter equation and the `U_q(g^{s,t})` symmetry
//! `Δ'(g) Ŝ(z) = Ŝ(z) Δ(g)`.
//!
//! Each order is exact: on the auxiliary space the bra selects index `j`
//! and the conservation law fixes a finite range of ket indices, so no
//! truncation enters any coefficient.

use std::collections::BTreeSet;
use std::sync::Arc;

use dashmap::DashMap;
use serde::Serialize;

use crate::fock::{
    basis_norm, graded_difference, BasisMap, FockIndex, FockVector, GradedVector, SparseOperator,
    ZDegree,
};
use crate::r3d::{apply_r, r_coefficient, r_column};
use crate::report::{VerificationReport, Witness};
use crate::scalar::{q_pochhammer, GaussianRational, Scalar};
use crate::uq::{build_algebra, coproduct, CoproductVariant, UqError};

/// `χ^{(s)} = Σ_m |s·m⟩ / (q^{s²}; q^{s²})_m`, used both as ket and bra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundaryVector {
    pub s: u8,
}

impl BoundaryVector {
    pub fn new(s: u8) -> Result<Self, UqError> {
        if matches!(s, 1 | 2) {
            Ok(Self { s })
        } else {
            Err(UqError::InvalidLabels(s, s))
        }
    }

    /// Coefficient of `|m⟩`; zero off the multiples of `s`.
    pub fn coeff(&self, m: u32) -> Scalar {
        let s = self.s as u32;
        if m % s != 0 {
            return Scalar::zero();
        }
        let base = 2 * (s * s) as i64;
        let p = q_pochhammer(base, (m / s) as i64).expect("nonnegative");
        Scalar::from_poly(p).inv().expect("nonzero Pochhammer")
    }

    /// Ket components with index `≤ max_index`.
    pub fn truncated(&self, max_index: u32) -> FockVector {
        FockVector::from_terms((0..=max_index).map(|m| (FockIndex::new(&[m]), self.coeff(m))))
    }

    /// `⟨χ|v⟩` for a single-site vector.
    pub fn pair(&self, v: &FockVector) -> Scalar {
        let mut acc = Scalar::zero();
        for (idx, c) in v.terms() {
            let m = idx.get(0);
            acc += &(&(c * &self.coeff(m)) * &basis_norm(m));
        }
        acc
    }
}

/// `K|m⟩ = (i q^{1/2})^m |m⟩`, normalized so that `K` fixes the vacuum.
pub fn zigzag_weight(total: i64) -> Scalar {
    Scalar::from_gaussian(GaussianRational::i_pow(total)).shift(total)
}

/// `K^power` on the given 0-based positions, times a constant.
#[derive(Clone)]
pub struct ZigZagMap {
    positions: Vec<usize>,
    power: i32,
    scale: Scalar,
}

impl ZigZagMap {
    pub fn new(sites: &[usize], power: i32, scale: Scalar) -> Self {
        Self { positions: sites.iter().map(|s| s - 1).collect(), power, scale }
    }
}

impl BasisMap for ZigZagMap {
    fn apply_basis(&self, idx: &FockIndex) -> FockVector {
        let total: i64 = self.positions.iter().map(|&p| idx.get(p) as i64).sum();
        let c = &zigzag_weight(self.power as i64 * total) * &self.scale;
        FockVector::monomial(idx.clone(), c)
    }

    fn min_arity(&self) -> usize {
        self.positions.iter().max().map_or(0, |p| p + 1)
    }

    fn label(&self) -> String {
        format!("K^{}", self.power)
    }
}

/// `K^power` on 1-based `sites` as an operator.
pub fn zigzag_operator(sites: &[usize], power: i32) -> SparseOperator {
    SparseOperator::map(Arc::new(ZigZagMap::new(sites, power, Scalar::one())))
}

/// One `z`-order of `S^{s,t}` (or `Ŝ^{s,t}`) on `F^{⊗n} ⊗ F^{⊗n}`.
pub struct MatrixProductOrder {
    s: u8,
    t: u8,
    n: usize,
    order: u32,
    zigzag: bool,
    cache: DashMap<FockIndex, FockVector>,
}

impl MatrixProductOrder {
    fn new(s: u8, t: u8, n: usize, order: u32, zigzag: bool) -> Self {
        Self { s, t, n, order, zigzag, cache: DashMap::new() }
    }

    /// Image of `|α, β⟩` (2n occupations).
    pub fn apply_local(&self, idx: &FockIndex) -> FockVector {
        if let Some(v) = self.cache.get(idx) {
            return v.clone();
        }
        let v = self.compute(idx);
        self.cache.insert(idx.clone(), v.clone());
        v
    }

    fn compute(&self, idx: &FockIndex) -> FockVector {
        let n = self.n;
        let j = self.order;
        let bra = BoundaryVector { s: self.s };
        let ket = BoundaryVector { s: self.t };
        let bra_weight = bra.coeff(j);
        if bra_weight.is_zero() {
            return FockVector::zero();
        }
        let bra_weight = &bra_weight * &basis_norm(j);
        let alpha: u32 = (0..n).map(|k| idx.get(k)).sum();
        let beta: u32 = (n..2 * n).map(|k| idx.get(k)).sum();
        // aux_out = aux_in + Σβ − Σβ' with 0 ≤ β'_k ≤ α_k + β_k.
        let lo = j.saturating_sub(beta);
        let hi = j + alpha;
        let mut out = FockVector::zero();
        for sigma in lo..=hi {
            let w = ket.coeff(sigma);
            if w.is_zero() {
                continue;
            }
            let mut v = FockVector::basis(idx.concat(&FockIndex::new(&[sigma])));
            for k in (1..=n).rev() {
                v = apply_r([k, n + k, 2 * n + 1], &v).expect("valid sites");
            }
            let scale = &w * &bra_weight;
            for (t, c) in v.terms() {
                if t.get(2 * n) == j {
                    out.add_term(t.slice(0, 2 * n), c * &scale);
                }
            }
        }
        if self.zigzag {
            let beta = beta as i64;
            out = FockVector::from_terms(out.into_terms().map(|(t, c)| {
                let alpha_out: i64 = (0..n).map(|k| t.get(k) as i64).sum();
                let c = &c * &zigzag_weight(alpha_out - beta);
                (t, c)
            }));
        }
        out
    }
}

/// An order of `S` placed on arbitrary sites of a larger space.
struct PlacedOrder {
    inner: Arc<MatrixProductOrder>,
    /// 0-based positions of the first leg followed by the second leg.
    positions: Vec<usize>,
}

impl BasisMap for PlacedOrder {
    fn apply_basis(&self, idx: &FockIndex) -> FockVector {
        let local: Vec<u32> = self.positions.iter().map(|&p| idx.get(p)).collect();
        let img = self.inner.apply_local(&FockIndex::new(&local));
        FockVector::from_terms(img.into_terms().map(|(t, c)| {
            let mut full = idx.clone();
            for (k, &p) in self.positions.iter().enumerate() {
                full.set(p, t.get(k));
            }
            (full, c)
        }))
    }

    fn min_arity(&self) -> usize {
        self.positions.iter().max().map_or(0, |p| p + 1)
    }

    fn label(&self) -> String {
        let name = if self.inner.zigzag { "S^" } else { "S" };
        format!("{name}[{}]", self.inner.order)
    }
}

/// `S^{s,t}(z)` (or `Ŝ^{s,t}(z)`) for orders `0..=max_order`; higher orders
/// are unknown, not zero.
#[derive(Clone)]
pub struct ZSeries {
    pub s: u8,
    pub t: u8,
    pub n: usize,
    pub zigzag: bool,
    orders: Vec<Arc<MatrixProductOrder>>,
}

impl ZSeries {
    pub fn max_order(&self) -> u32 {
        self.orders.len() as u32 - 1
    }

    /// Coefficient of `z^j` on sites `1..2n`, or `None` beyond truncation.
    pub fn coefficient(&self, j: u32) -> Option<SparseOperator> {
        let n = self.n;
        let positions: Vec<usize> = (0..2 * n).collect();
        self.orders.get(j as usize).map(|o| {
            SparseOperator::map(Arc::new(PlacedOrder { inner: o.clone(), positions }))
        })
    }

    /// Image of a vector under the `z^j` coefficient.
    pub fn apply_order(&self, j: u32, v: &FockVector) -> Option<FockVector> {
        let o = self.orders.get(j as usize)?;
        Some(v.map_linear(|idx| o.apply_local(idx)))
    }

    /// `Σ_j c_j S_j` on the given 1-based site lists, with term `j` carrying
    /// formal degree `degree(j)`.
    pub fn placed<D: Fn(u32) -> ZDegree>(
        &self,
        first_leg: &[usize],
        second_leg: &[usize],
        degree: D,
    ) -> SparseOperator {
        let positions: Vec<usize> =
            first_leg.iter().chain(second_leg.iter()).map(|s| s - 1).collect();
        let mut op = SparseOperator::zero();
        for (j, o) in self.orders.iter().enumerate() {
            let placed = PlacedOrder { inner: o.clone(), positions: positions.clone() };
            op = op.plus(&SparseOperator::map(Arc::new(placed)).with_degree(degree(j as u32)));
        }
        op
    }

    /// All nonzero matrix elements with input occupations `≤ cutoff`, ordered
    /// by order, input, output.
    pub fn entries(&self, cutoff: u32) -> Vec<MatrixEntry> {
        let mut out = Vec::new();
        for (j, o) in self.orders.iter().enumerate() {
            for input in FockIndex::all_bounded(2 * self.n, cutoff) {
                for (output, c) in o.apply_local(&input).terms() {
                    out.push(MatrixEntry {
                        z_order: j as u32,
                        in_state: input.clone(),
                        out_state: output.clone(),
                        coeff: c.to_string(),
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixEntry {
    pub z_order: u32,
    pub in_state: FockIndex,
    pub out_state: FockIndex,
    pub coeff: String,
}

/// Builds `S^{s,t}(z)` on `F^{⊗n} ⊗ F^{⊗n}` for orders `0..=max_order`.
pub fn build_s(s: u8, t: u8, n: usize, max_order: u32) -> Result<ZSeries, UqError> {
    build_series(s, t, n, max_order, false)
}

/// `Ŝ = (K⊗1) S (1⊗K⁻¹)` order by order.
pub fn zigzag_transform(series: &ZSeries) -> ZSeries {
    build_series(series.s, series.t, series.n, series.max_order(), true).expect("validated")
}

fn build_series(s: u8, t: u8, n: usize, max_order: u32, zigzag: bool) -> Result<ZSeries, UqError> {
    build_algebra(s, t, n)?;
    let orders = (0..=max_order)
        .map(|j| Arc::new(MatrixProductOrder::new(s, t, n, j, zigzag)))
        .collect();
    Ok(ZSeries { s, t, n, zigzag, orders })
}

fn witness(check: impl Into<String>, state: &FockIndex, detail: String) -> Witness {
    Witness { check: check.into(), state: Some(state.as_slice().to_vec()), detail }
}

/// `R(χ⊗χ⊗χ) = χ⊗χ⊗χ` on every output component `≤ cutoff`, and the bra
/// version `(⟨χ|⊗⟨χ|⊗⟨χ|)R = ⟨χ|⊗⟨χ|⊗⟨χ|` on every input triple `≤ cutoff`.
pub fn verify_boundary_fixed(s: u8, cutoff: u32) -> Result<VerificationReport, UqError> {
    let chi = BoundaryVector::new(s)?;
    let states = FockIndex::all_bounded(3, cutoff);
    let mut report = VerificationReport::new("boundary", cutoff).with_param("s", s);
    report.run_parallel(&states, |st| {
        let (a, b, c) = (st.get(0), st.get(1), st.get(2));
        let mut ws = Vec::new();
        // Ket: inputs with i + j = a + b and j + k = b + c.
        let mut lhs = Scalar::zero();
        for j in 0..=(a + b).min(b + c) {
            let (i, k) = (a + b - j, b + c - j);
            let w = &(&chi.coeff(i) * &chi.coeff(j)) * &chi.coeff(k);
            if !w.is_zero() {
                lhs += &(&r_coefficient(a, b, c, i, j, k) * &w);
            }
        }
        let rhs = &(&chi.coeff(a) * &chi.coeff(b)) * &chi.coeff(c);
        if lhs != rhs {
            ws.push(witness("ket", st, format!("lhs {lhs} vs rhs {rhs}")));
        }
        // Bra: pair the image of |i,j,k⟩ = |a,b,c⟩ with ⟨χχχ|.
        let weight = |x: u32, y: u32, z: u32| {
            let c = &(&chi.coeff(x) * &chi.coeff(y)) * &chi.coeff(z);
            &c * &(&(&basis_norm(x) * &basis_norm(y)) * &basis_norm(z))
        };
        let mut lhs = Scalar::zero();
        for &((x, y, z), ref v) in r_column(a, b, c).iter() {
            lhs += &(v * &weight(x, y, z));
        }
        let rhs = weight(a, b, c);
        if lhs != rhs {
            ws.push(witness("bra", st, format!("lhs {lhs} vs rhs {rhs}")));
        }
        (2, ws)
    });
    Ok(report)
}

/// The defining conditions of `χ^{(s)}`, coefficientwise up to `cutoff`:
/// `a^±|χ^{(1)}⟩ = (1 ∓ q^{∓1/2}k)|χ^{(1)}⟩`, `⟨χ^{(1)}|a^± = ⟨χ^{(1)}|(1 ± q^{±1/2}k)`,
/// `a⁺|χ^{(2)}⟩ = a⁻|χ^{(2)}⟩` and `⟨χ^{(2)}|a⁺ = ⟨χ^{(2)}|a⁻`.
pub fn verify_chi_conditions(s: u8, cutoff: u32) -> Result<VerificationReport, UqError> {
    let chi = BoundaryVector::new(s)?;
    let ap = SparseOperator::raise(1);
    let am = SparseOperator::lower(1);
    let k = SparseOperator::k_pow(1, 1);
    let one = SparseOperator::identity();
    let pairs: Vec<(&str, SparseOperator, SparseOperator, SparseOperator, SparseOperator)> =
        if s == 1 {
            vec![(
                "a+",
                ap.clone(),
                one.minus(&k.scaled(&Scalar::u_pow(-1))),
                ap.clone(),
                one.plus(&k.scaled(&Scalar::u_pow(1))),
            ), (
                "a-",
                am.clone(),
                one.plus(&k.scaled(&Scalar::u_pow(1))),
                am.clone(),
                one.minus(&k.scaled(&Scalar::u_pow(-1))),
            )]
        } else {
            vec![("a+ = a-", ap.clone(), am.clone(), ap.clone(), am.clone())]
        };
    // Headroom of one index: both sides at index m ≤ cutoff only involve χ
    // components up to m + 1.
    let ket = chi.truncated(cutoff + 1);
    let states = FockIndex::all_bounded(1, cutoff);
    let mut report = VerificationReport::new("chi conditions", cutoff).with_param("s", s);
    for (name, kl, kr, bl, br) in pairs {
        let lhs = kl.apply(&ket).expect("one site");
        let rhs = kr.apply(&ket).expect("one site");
        report.run_parallel(&states, |st| {
            let mut ws = Vec::new();
            let (l, r) = (lhs.coeff(st), rhs.coeff(st));
            if l != r {
                ws.push(witness(format!("ket {name}"), st, format!("lhs {l} vs rhs {r}")));
            }
            let v = FockVector::basis(st.clone());
            let l = chi.pair(&bl.apply(&v).expect("one site"));
            let r = chi.pair(&br.apply(&v).expect("one site"));
            if l != r {
                ws.push(witness(format!("bra {name}"), st, format!("lhs {l} vs rhs {r}")));
            }
            (2, ws)
        });
    }
    report.states_checked = states.len();
    Ok(report)
}

fn restrict(g: GradedVector, keep: impl Fn(ZDegree) -> bool) -> GradedVector {
    g.into_iter().filter(|(d, _)| keep(*d)).collect()
}

/// `S_{αβ}(x) S_{αγ}(xy) S_{βγ}(y) = S_{βγ}(y) S_{αγ}(xy) S_{αβ}(x)` on
/// `F^{⊗3n}` for every coefficient `x^p y^r` with `p + r ≤ total_order`,
/// on all states with occupations `≤ cutoff`.
pub fn verify_ybe(
    s: u8,
    t: u8,
    n: usize,
    total_order: u32,
    cutoff: u32,
) -> Result<VerificationReport, UqError> {
    let series = build_s(s, t, n, total_order)?;
    let alpha: Vec<usize> = (1..=n).collect();
    let beta: Vec<usize> = (n + 1..=2 * n).collect();
    let gamma: Vec<usize> = (2 * n + 1..=3 * n).collect();
    let ab = series.placed(&alpha, &beta, |j| ZDegree::new(j as i32, 0));
    let ac = series.placed(&alpha, &gamma, |j| ZDegree::new(j as i32, j as i32));
    let bc = series.placed(&beta, &gamma, |j| ZDegree::new(0, j as i32));
    let lhs = SparseOperator::product([&ab, &ac, &bc]);
    let rhs = SparseOperator::product([&bc, &ac, &ab]);
    let states = FockIndex::all_bounded(3 * n, cutoff);
    let keep = |d: ZDegree| (d.x + d.y) as u32 <= total_order;
    let mut report = VerificationReport::new("ybe", cutoff)
        .with_param("s", s)
        .with_param("t", t)
        .with_param("n", n)
        .with_param("total_order", total_order);
    report.run_parallel(&states, |st| {
        let v = FockVector::basis(st.clone());
        let l = restrict(lhs.apply_graded(&v).expect("arity"), keep);
        let r = restrict(rhs.apply_graded(&v).expect("arity"), keep);
        let ws = graded_difference(&l, &r)
            .map(|d| witness("S12 S13 S23 = S23 S13 S12", st, d))
            .into_iter()
            .collect();
        (1, ws)
    });
    Ok(report)
}

/// `Δ'(g) Ŝ(z) = Ŝ(z) Δ(g)` for every Chevalley generator, with
/// `(x, y) = (z, 1)`, compared order by order for `z`-orders `≤ max_order`
/// on all states of `F^{⊗n} ⊗ F^{⊗n}` with occupations `≤ cutoff`.
///
/// `e_0` and `f_0` shift orders by `±s`, so `Ŝ` is built to order
/// `max_order + s` to keep every compared order complete.
pub fn verify_symmetry(
    s: u8,
    t: u8,
    n: usize,
    max_order: u32,
    cutoff: u32,
) -> Result<VerificationReport, UqError> {
    let spec = build_algebra(s, t, n)?;
    let shat = zigzag_transform(&build_s(s, t, n, max_order + s as u32)?);
    let sites1: Vec<usize> = (1..=n).collect();
    let sites2: Vec<usize> = (n + 1..=2 * n).collect();
    let sop = shat.placed(&sites1, &sites2, |j| ZDegree::z(j as i32));
    let specialize = |op: SparseOperator| op.map_degrees(|d| ZDegree::z(d.x));
    let states = FockIndex::all_bounded(2 * n, cutoff);
    let mut report = VerificationReport::new("symmetry", cutoff)
        .with_param("s", s)
        .with_param("t", t)
        .with_param("n", n)
        .with_param("max_order", max_order);
    let keep = |d: ZDegree| d.x <= max_order as i32;
    for g in spec.generators() {
        let d = specialize(coproduct(&spec, g, CoproductVariant::Delta)?);
        let dp = specialize(coproduct(&spec, g, CoproductVariant::Opposite)?);
        let lhs = dp.compose(&sop);
        let rhs = sop.compose(&d);
        let name = format!("Delta'({g}) S^ = S^ Delta({g})");
        report.run_parallel(&states, |st| {
            let v = FockVector::basis(st.clone());
            let l = restrict(lhs.apply_graded(&v).expect("arity"), keep);
            let r = restrict(rhs.apply_graded(&v).expect("arity"), keep);
            let ws = graded_difference(&l, &r).map(|d| witness(&name, st, d)).into_iter().collect();
            (1, ws)
        });
    }
    report.states_checked = states.len();
    Ok(report)
}

/// Orders at which `S^{s,t}` can be nonzero: multiples of `s`.
pub fn supported_orders(s: u8, max_order: u32) -> BTreeSet<u32> {
    (0..=max_order).filter(|j| j % s as u32 == 0).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_element_orders_zero_and_one() {
        let s = build_s(1, 1, 1, 1).unwrap();
        let vac = FockVector::basis(FockIndex::vacuum(2));
        assert_eq!(s.apply_order(0, &vac).unwrap(), vac);
        let one = Scalar::one();
        let q = Scalar::q_pow(1);
        let expected = &(&one + &q) / &(&one - &q);
        assert_eq!(s.apply_order(1, &vac).unwrap(), vac.scale(&expected));
        assert!(s.apply_order(2, &vac).is_none());
    }

    #[test]
    fn odd_orders_vanish_for_even_boundary() {
        let s = build_s(2, 1, 1, 3).unwrap();
        for st in FockIndex::all_bounded(2, 2) {
            let v = FockVector::basis(st);
            assert!(s.apply_order(1, &v).unwrap().is_zero());
            assert!(s.apply_order(3, &v).unwrap().is_zero());
        }
    }

    #[test]
    fn boundary_coefficients() {
        let chi2 = BoundaryVector::new(2).unwrap();
        assert!(chi2.coeff(1).is_zero());
        assert!(chi2.coeff(0).is_one());
        let expected = (&Scalar::one() - &Scalar::q_pow(4)).inv().unwrap();
        assert_eq!(chi2.coeff(2), expected);
        assert!(BoundaryVector::new(3).is_err());
    }
}
