//! Fock representation of the q-oscillator algebra on `F^{⊗n}`.
//!
//! Basis `|m⟩`, `m ≥ 0`, with
//! `a⁺|m⟩ = |m+1⟩`, `a⁻|m⟩ = (1 − q^{2m})|m−1⟩`, `k^{±1}|m⟩ = q^{±(m+1/2)}|m⟩`,
//! `h|m⟩ = m|m⟩`, and the pairing `⟨m|m'⟩ = (q²;q²)_m δ_{m,m'}`.

mod operator;
mod vector;

use serde::{Deserialize, Serialize};

pub use operator::{
    graded_difference, vector_difference, BasisMap, Factor, GradedVector, OpTerm, SiteOp,
    SparseOperator, ZDegree,
};
pub use vector::{FockIndex, FockVector};

use crate::report::{VerificationReport, Witness};
use crate::scalar::{q_pochhammer, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    #[error("site {site} out of range for arity {arity}")]
    SiteOutOfRange { site: usize, arity: usize },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("sites must be distinct, got {0:?}")]
    SiteClash(Vec<usize>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generator {
    #[serde(rename = "a+")]
    APlus,
    #[serde(rename = "a-")]
    AMinus,
    #[serde(rename = "k")]
    K,
    #[serde(rename = "k^-1")]
    KInv,
    #[serde(rename = "h")]
    H,
}

impl Generator {
    pub fn site_op(self) -> SiteOp {
        match self {
            Generator::APlus => SiteOp::Raise,
            Generator::AMinus => SiteOp::Lower,
            Generator::K => SiteOp::KPow(1),
            Generator::KInv => SiteOp::KPow(-1),
            Generator::H => SiteOp::Number,
        }
    }
}

/// Applies a generator at a 1-based `site`.
pub fn apply_generator(gen: Generator, site: usize, v: &FockVector) -> Result<FockVector, FockError> {
    let arity = v.arity().unwrap_or(usize::MAX);
    if site == 0 || site > arity {
        return Err(FockError::SiteOutOfRange { site, arity: v.arity().unwrap_or(0) });
    }
    SparseOperator::site(site, gen.site_op()).apply(v)
}

/// `⟨m|m⟩ = (q²;q²)_m` for a single site.
pub fn basis_norm(m: u32) -> Scalar {
    Scalar::from_poly(q_pochhammer(4, m as i64).expect("nonnegative length"))
}

/// `⟨bra|v⟩` for the pairing `⟨m|m'⟩ = ∏_k (q²;q²)_{m_k} δ_{m_k,m'_k}`.
pub fn pairing(bra: &FockIndex, v: &FockVector) -> Result<Scalar, FockError> {
    if let Some(n) = v.arity() {
        if n != bra.arity() {
            return Err(FockError::ArityMismatch { left: bra.arity(), right: n });
        }
    }
    let c = v.coeff(bra);
    if c.is_zero() {
        return Ok(c);
    }
    Ok(bra.as_slice().iter().fold(c, |acc, &m| &acc * &basis_norm(m)))
}

/// Compares two operators on every state in `states`, recording one witness
/// per failing state under the name `check`.
pub fn check_operator_identity(
    report: &mut VerificationReport,
    check: &str,
    lhs: &SparseOperator,
    rhs: &SparseOperator,
    states: &[FockIndex],
) {
    report.run_parallel(states, |s| {
        let v = FockVector::basis(s.clone());
        let outcome = lhs
            .apply_graded(&v)
            .and_then(|l| rhs.apply_graded(&v).map(|r| graded_difference(&l, &r)));
        let witness = match outcome {
            Ok(None) => None,
            Ok(Some(detail)) => Some(detail),
            Err(e) => Some(e.to_string()),
        };
        let ws = witness
            .map(|detail| Witness {
                check: check.to_string(),
                state: Some(s.as_slice().to_vec()),
                detail,
            })
            .into_iter()
            .collect();
        (1, ws)
    });
}

/// The q-oscillator relations as `(name, lhs, rhs)` on a single site.
pub fn qosc_relations() -> Vec<(&'static str, SparseOperator, SparseOperator)> {
    let ap = SparseOperator::raise(1);
    let am = SparseOperator::lower(1);
    let k = SparseOperator::k_pow(1, 1);
    let kinv = SparseOperator::k_pow(1, -1);
    let k2 = SparseOperator::k_pow(1, 2);
    let one = SparseOperator::identity();
    let q = Scalar::q_pow(1);
    let qinv = Scalar::q_pow(-1);
    vec![
        ("k k^-1 = 1", k.compose(&kinv), one.clone()),
        ("k^-1 k = 1", kinv.compose(&k), one.clone()),
        ("k a+ = q a+ k", k.compose(&ap), ap.compose(&k).scaled(&q)),
        ("k a- = q^-1 a- k", k.compose(&am), am.compose(&k).scaled(&qinv)),
        ("a+ a- = 1 - q^-1 k^2", ap.compose(&am), one.minus(&k2.scaled(&qinv))),
        ("a- a+ = 1 - q k^2", am.compose(&ap), one.minus(&k2.scaled(&q))),
    ]
}

/// Checks the q-oscillator relations on `|m⟩` for all `m ≤ cutoff`.
pub fn verify_qosc_relations(cutoff: u32) -> VerificationReport {
    let states = FockIndex::all_bounded(1, cutoff);
    let mut report = VerificationReport::new("qosc", cutoff);
    for (name, lhs, rhs) in qosc_relations() {
        let mut sub = VerificationReport::new(name, cutoff);
        check_operator_identity(&mut sub, name, &lhs, &rhs, &states);
        report.absorb(sub);
    }
    report.states_checked = states.len();
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ket(m: &[u32]) -> FockVector {
        FockVector::basis(FockIndex::new(m))
    }

    #[test]
    fn raise_vacuum() {
        assert_eq!(apply_generator(Generator::APlus, 1, &ket(&[0])).unwrap(), ket(&[1]));
    }

    #[test]
    fn lower_vacuum_vanishes() {
        assert!(apply_generator(Generator::AMinus, 1, &ket(&[0])).unwrap().is_zero());
    }

    #[test]
    fn k_on_two() {
        let v = apply_generator(Generator::K, 1, &ket(&[2])).unwrap();
        assert_eq!(v, FockVector::monomial(FockIndex::new(&[2]), Scalar::u_pow(5)));
    }

    #[test]
    fn site_out_of_range() {
        assert!(apply_generator(Generator::K, 3, &ket(&[0, 0])).is_err());
        assert!(apply_generator(Generator::K, 0, &ket(&[0, 0])).is_err());
    }

    #[test]
    fn pairing_values() {
        let one_minus_q2 = &Scalar::one() - &Scalar::q_pow(2);
        assert_eq!(pairing(&FockIndex::new(&[1]), &ket(&[1])).unwrap(), one_minus_q2);
        assert_eq!(pairing(&FockIndex::new(&[0]), &ket(&[0])).unwrap(), Scalar::one());
        assert!(pairing(&FockIndex::new(&[2]), &ket(&[1])).unwrap().is_zero());
        assert!(pairing(&FockIndex::new(&[2, 0]), &ket(&[1])).is_err());
    }

    #[test]
    fn qosc_relations_hold() {
        let r = verify_qosc_relations(6);
        assert!(r.pass, "{:?}", r.witnesses);
        assert_eq!(r.states_checked, 7);
    }

    #[test]
    fn json_form() {
        let v = &ket(&[1, 0]) - &ket(&[0, 1]).scale(&Scalar::q_pow(1));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(
            s,
            r#"[{"index":[0,1],"coeff":"(-u^2)/(1)"},{"index":[1,0],"coeff":"(1)/(1)"}]"#
        );
    }
}
