//! The 3D R in the Fock representation.
//!
//! `R(|i⟩⊗|j⟩⊗|k⟩) = Σ_{a,b,c} R^{abc}_{ijk} |a⟩⊗|b⟩⊗|c⟩` with
//!
//! ```text
//! R^{abc}_{ijk} = δ_{a+b,i+j} δ_{b+c,j+k} Σ_{λ+μ=b} (−1)^λ q^{i(c−j)+(k+1)λ+μ(μ−k)}
//!                 (q²)_{c+μ}/(q²)_c · binom(i,μ)_{q²} · binom(j,λ)_{q²}
//! ```
//!
//! Every coefficient is a Laurent polynomial in `q^{1/2}`, so all checks here
//! stay in polynomial arithmetic.

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use crate::fock::{
    check_operator_identity, BasisMap, FockError, FockIndex, FockVector,
    SparseOperator,
};
use crate::report::{VerificationReport, Witness};
use crate::scalar::{q_binomial, q_pochhammer_ratio, GaussianRational, LaurentPoly, Scalar};

pub type Triple = (u32, u32, u32);

/// Column `R|i,j,k⟩` as nonzero `((a,b,c), coefficient)` pairs.
pub type RColumn = Arc<[(Triple, Scalar)]>;

fn r_poly(a: u32, b: u32, c: u32, i: u32, j: u32, k: u32) -> LaurentPoly {
    if a + b != i + j || b + c != j + k {
        return LaurentPoly::zero();
    }
    let (b, c, i, j, k) = (b as i64, c as i64, i as i64, j as i64, k as i64);
    let mut acc = LaurentPoly::zero();
    for mu in (b - j).max(0)..=b.min(i) {
        let lambda = b - mu;
        let q_exp = i * (c - j) + (k + 1) * lambda + mu * (mu - k);
        let sign = if lambda % 2 == 0 { 1 } else { -1 };
        let mono = LaurentPoly::monomial(GaussianRational::from_int(sign), 2 * q_exp);
        let term = &(&(&mono * &q_pochhammer_ratio(4, c, c + mu)) * &q_binomial(i, mu, 4))
            * &q_binomial(j, lambda, 4);
        acc = &acc + &term;
    }
    acc
}

/// The matrix element `R^{abc}_{ijk}`; zero unless `a+b = i+j` and `b+c = j+k`.
pub fn r_coefficient(a: u32, b: u32, c: u32, i: u32, j: u32, k: u32) -> Scalar {
    Scalar::from_poly(r_poly(a, b, c, i, j, k))
}

fn column_cache() -> &'static DashMap<Triple, RColumn> {
    static CACHE: OnceLock<DashMap<Triple, RColumn>> = OnceLock::new();
    CACHE.get_or_init(DashMap::new)
}

/// Memoized image `R|i,j,k⟩`. Conservation leaves one free index `b`.
pub fn r_column(i: u32, j: u32, k: u32) -> RColumn {
    if let Some(col) = column_cache().get(&(i, j, k)) {
        return col.clone();
    }
    let col: RColumn = (0..=(i + j).min(j + k))
        .filter_map(|b| {
            let (a, c) = (i + j - b, j + k - b);
            let v = r_coefficient(a, b, c, i, j, k);
            (!v.is_zero()).then_some(((a, b, c), v))
        })
        .collect();
    column_cache().entry((i, j, k)).or_insert(col).clone()
}

fn check_sites(sites: [usize; 3], arity: Option<usize>) -> Result<[usize; 3], FockError> {
    let [x, y, z] = sites;
    if x == y || y == z || x == z {
        return Err(FockError::SiteClash(sites.to_vec()));
    }
    for s in sites {
        let bad = s == 0 || arity.is_some_and(|n| s > n);
        if bad {
            return Err(FockError::SiteOutOfRange { site: s, arity: arity.unwrap_or(0) });
        }
    }
    Ok([x - 1, y - 1, z - 1])
}

fn push_basis(pos: [usize; 3], idx: &FockIndex, out: &mut FockVector, scale: &Scalar) {
    let col = r_column(idx.get(pos[0]), idx.get(pos[1]), idx.get(pos[2]));
    for &((a, b, c), ref v) in col.iter() {
        let mut t = idx.clone();
        t.set(pos[0], a);
        t.set(pos[1], b);
        t.set(pos[2], c);
        let coeff = if scale.is_one() { v.clone() } else { v * scale };
        out.add_term(t, coeff);
    }
}

/// Applies `R` on the given 1-based sites `(s1, s2, s3)`; other sites are
/// untouched.
pub fn apply_r(sites: [usize; 3], v: &FockVector) -> Result<FockVector, FockError> {
    let pos = check_sites(sites, v.arity())?;
    let mut out = FockVector::zero();
    for (idx, c) in v.terms() {
        push_basis(pos, idx, &mut out, c);
    }
    Ok(out)
}

/// `R` on three positions, usable as an operator factor.
#[derive(Debug, Clone, Copy)]
pub struct RMap {
    pos: [usize; 3],
}

impl RMap {
    pub fn new(sites: [usize; 3]) -> Result<Self, FockError> {
        Ok(Self { pos: check_sites(sites, None)? })
    }
}

impl BasisMap for RMap {
    fn apply_basis(&self, idx: &FockIndex) -> FockVector {
        let mut out = FockVector::zero();
        push_basis(self.pos, idx, &mut out, &Scalar::one());
        out
    }

    fn min_arity(&self) -> usize {
        self.pos.iter().max().unwrap() + 1
    }

    fn label(&self) -> String {
        format!("R{}{}{}", self.pos[0] + 1, self.pos[1] + 1, self.pos[2] + 1)
    }
}

pub fn r_operator(sites: [usize; 3]) -> Result<SparseOperator, FockError> {
    Ok(SparseOperator::map(Arc::new(RMap::new(sites)?)))
}

fn states3(n: u32) -> Vec<FockIndex> {
    FockIndex::all_bounded(3, n)
}

fn first_difference(lhs: &FockVector, rhs: &FockVector) -> Option<String> {
    crate::fock::vector_difference(lhs, rhs)
}

/// Checks `R(R|i,j,k⟩) = |i,j,k⟩` for all `i,j,k ≤ n`.
pub fn verify_involution(n: u32) -> VerificationReport {
    let mut report = VerificationReport::new("involution", n);
    report.run_parallel(&states3(n), |s| {
        let v = FockVector::basis(s.clone());
        let rr = apply_r([1, 2, 3], &apply_r([1, 2, 3], &v).unwrap()).unwrap();
        let ws = first_difference(&rr, &v)
            .map(|detail| Witness {
                check: "R R = 1".into(),
                state: Some(s.as_slice().to_vec()),
                detail,
            })
            .into_iter()
            .collect();
        (1, ws)
    });
    report
}

/// The defining relations of `R` as `(name, X, Y)` meaning `R X = Y R`,
/// followed by the two conservation laws `[R, h1+h2] = [R, h2+h3] = 0`.
pub fn intertwining_relations() -> Vec<(&'static str, SparseOperator, SparseOperator)> {
    use SparseOperator as Op;
    let ap = Op::raise;
    let am = Op::lower;
    let k = |s| Op::k_pow(s, 1);
    let p = |ops: &[Op]| Op::product(ops.iter());
    vec![
        ("R k2 a+1 = (k3 a+1 + k1 a+2 a-3) R", p(&[k(2), ap(1)]),
            p(&[k(3), ap(1)]).plus(&p(&[k(1), ap(2), am(3)]))),
        ("R k2 a-1 = (k3 a-1 + k1 a-2 a+3) R", p(&[k(2), am(1)]),
            p(&[k(3), am(1)]).plus(&p(&[k(1), am(2), ap(3)]))),
        ("R a+2 = (a+1 a+3 - k1 k3 a+2) R", ap(2),
            p(&[ap(1), ap(3)]).minus(&p(&[k(1), k(3), ap(2)]))),
        ("R a-2 = (a-1 a-3 - k1 k3 a-2) R", am(2),
            p(&[am(1), am(3)]).minus(&p(&[k(1), k(3), am(2)]))),
        ("R k2 a+3 = (k1 a+3 + k3 a-1 a+2) R", p(&[k(2), ap(3)]),
            p(&[k(1), ap(3)]).plus(&p(&[k(3), am(1), ap(2)]))),
        ("R k2 a-3 = (k1 a-3 + k3 a+1 a-2) R", p(&[k(2), am(3)]),
            p(&[k(1), am(3)]).plus(&p(&[k(3), ap(1), am(2)]))),
        ("R k1 k2 = k1 k2 R", p(&[k(1), k(2)]), p(&[k(1), k(2)])),
        ("R k2 k3 = k2 k3 R", p(&[k(2), k(3)]), p(&[k(2), k(3)])),
        ("[R, h1 + h2] = 0", Op::number(1).plus(&Op::number(2)),
            Op::number(1).plus(&Op::number(2))),
        ("[R, h2 + h3] = 0", Op::number(2).plus(&Op::number(3)),
            Op::number(2).plus(&Op::number(3))),
    ]
}

/// Checks every relation `R X = Y R` on all `|i,j,k⟩` with `i,j,k ≤ n`.
///
/// No truncation is involved: both sides are finite sums on each basis state.
pub fn verify_intertwining(n: u32) -> VerificationReport {
    let r = r_operator([1, 2, 3]).unwrap();
    let states = states3(n);
    let mut report = VerificationReport::new("intertwining", n);
    for (name, x, y) in intertwining_relations() {
        check_operator_identity(&mut report, name, &r.compose(&x), &y.compose(&r), &states);
    }
    report.states_checked = states.len();
    report
}

/// Checks `[R, h1+h2] = [R, h2+h3] = 0` on all triples `≤ n`.
pub fn verify_conservation(n: u32) -> VerificationReport {
    let r = r_operator([1, 2, 3]).unwrap();
    let states = states3(n);
    let mut report = VerificationReport::new("conservation", n);
    for (name, x, y) in intertwining_relations().into_iter().skip(8) {
        check_operator_identity(&mut report, name, &r.compose(&x), &y.compose(&r), &states);
    }
    report.states_checked = states.len();
    report
}

/// `R456 R236 R135 R124`, rightmost applied first.
pub const TETRA_LHS: [[usize; 3]; 4] = [[4, 5, 6], [2, 3, 6], [1, 3, 5], [1, 2, 4]];
/// `R124 R135 R236 R456`, rightmost applied first.
pub const TETRA_RHS: [[usize; 3]; 4] = [[1, 2, 4], [1, 3, 5], [2, 3, 6], [4, 5, 6]];

/// Applies a word of `R`s, the last entry acting first.
pub fn apply_r_word(word: &[[usize; 3]], v: &FockVector) -> Result<FockVector, FockError> {
    word.iter().rev().try_fold(v.clone(), |acc, sites| apply_r(*sites, &acc))
}

/// Checks `R124 R135 R236 R456 = R456 R236 R135 R124` on every 6-site basis
/// state with all occupations `≤ n`, one state at a time.
pub fn verify_tetrahedron(n: u32) -> VerificationReport {
    let states = FockIndex::all_bounded(6, n);
    let mut report = VerificationReport::new("tetrahedron", n);
    report.run_parallel(&states, |s| {
        let v = FockVector::basis(s.clone());
        let lhs = apply_r_word(&TETRA_RHS, &v).unwrap();
        let rhs = apply_r_word(&TETRA_LHS, &v).unwrap();
        let ws = first_difference(&lhs, &rhs)
            .map(|detail| Witness {
                check: "R124 R135 R236 R456 = R456 R236 R135 R124".into(),
                state: Some(s.as_slice().to_vec()),
                detail,
            })
            .into_iter()
            .collect();
        (1, ws)
    });
    report
}

/// CSV rows `a,b,c,i,j,k,coeff` for all nonzero coefficients with inputs
/// `i,j,k ≤ n`, ordered by input then output.
pub fn coefficient_csv(n: u32) -> String {
    let mut out = String::from("a,b,c,i,j,k,coeff\n");
    for s in states3(n) {
        let (i, j, k) = (s.get(0), s.get(1), s.get(2));
        let mut col: Vec<_> = r_column(i, j, k).iter().cloned().collect();
        col.sort_by(|x, y| x.0.cmp(&y.0));
        for ((a, b, c), v) in col {
            writeln!(out, "{a},{b},{c},{i},{j},{k},{v}").unwrap();
        }
    }
    out
}
