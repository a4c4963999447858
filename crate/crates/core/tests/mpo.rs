use std::sync::Arc;

use tetra_core::fock::{FockIndex, FockVector, SparseOperator, ZDegree};
use tetra_core::mpo::{
    build_s, verify_boundary_fixed, verify_chi_conditions, verify_symmetry, verify_ybe,
    zigzag_operator, zigzag_transform, BoundaryVector, ZigZagMap,
};
use tetra_core::scalar::{LaurentPoly, Scalar};

const LABELS: [(u8, u8); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

fn ket(m: &[u32]) -> FockVector {
    FockVector::basis(FockIndex::new(m))
}

#[test]
fn boundary_fixed_points() {
    for s in [1, 2] {
        let r = verify_boundary_fixed(s, 4).unwrap();
        assert!(r.pass, "s={s}: {:?}", r.witnesses);
        assert_eq!(r.states_checked, 125);
    }
}

#[test]
fn boundary_conditions() {
    for s in [1, 2] {
        let r = verify_chi_conditions(s, 8).unwrap();
        assert!(r.pass, "s={s}: {:?}", r.witnesses);
    }
}

#[test]
fn chi_condition_examples() {
    // s=1: coefficient of |0> in a-|chi> is (1 - q^2)/(1 - q) = 1 + q.
    let chi = BoundaryVector::new(1).unwrap();
    let v = SparseOperator::lower(1).apply(&chi.truncated(2)).unwrap();
    assert_eq!(v.coeff(&FockIndex::new(&[0])), &Scalar::one() + &Scalar::q_pow(1));
    // s=2: coefficient of |1> is 1 on both sides.
    let chi = BoundaryVector::new(2).unwrap();
    let up = SparseOperator::raise(1).apply(&chi.truncated(3)).unwrap();
    let down = SparseOperator::lower(1).apply(&chi.truncated(3)).unwrap();
    assert!(up.coeff(&FockIndex::new(&[1])).is_one());
    assert!(down.coeff(&FockIndex::new(&[1])).is_one());
}

#[test]
fn vacuum_diagonal_matches_direct_summation() {
    // On the vacuum only the auxiliary index survives and R acts as the
    // identity on it, so the z^j coefficient is (q^2;q^2)_j / (q;q)_j^2.
    let series = build_s(1, 1, 1, 3).unwrap();
    let vac = ket(&[0, 0]);
    for j in 0..=3u32 {
        let mut expected = Scalar::one();
        for k in 1..=j as i64 {
            let num = &LaurentPoly::one() + &LaurentPoly::q_pow(k);
            let den = &LaurentPoly::one() - &LaurentPoly::q_pow(k);
            expected = &expected * &Scalar::from_ratio(num, den).unwrap();
        }
        assert_eq!(series.apply_order(j, &vac).unwrap(), vac.scale(&expected), "order {j}");
    }
}

#[test]
fn sitewise_conservation() {
    for (s, t) in LABELS {
        let series = build_s(s, t, 2, 3).unwrap();
        for j in 0..=3 {
            for st in FockIndex::all_bounded(4, 2) {
                for (out, _) in series.apply_order(j, &FockVector::basis(st.clone())).unwrap().terms() {
                    for k in 0..2 {
                        assert_eq!(out.get(k) + out.get(k + 2), st.get(k) + st.get(k + 2));
                    }
                }
            }
        }
    }
}

#[test]
fn commutes_with_k_tensor_k() {
    for (s, t) in LABELS {
        let series = build_s(s, t, 2, 4).unwrap();
        let kk = zigzag_operator(&[1, 2, 3, 4], 1);
        for j in 0..=4 {
            let sj = series.coefficient(j).unwrap();
            for st in FockIndex::all_bounded(4, 2) {
                let v = FockVector::basis(st);
                let lhs = sj.compose(&kk).apply(&v).unwrap();
                let rhs = kk.compose(&sj).apply(&v).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn zigzag_matches_explicit_conjugation_for_any_normalization() {
    let series = build_s(1, 2, 1, 3).unwrap();
    let hat = zigzag_transform(&series);
    for c in [Scalar::one(), Scalar::from_int(3), &Scalar::i() * &Scalar::q_pow(2)] {
        let k1 = SparseOperator::map(Arc::new(ZigZagMap::new(&[1], 1, c.clone())));
        let k2inv = SparseOperator::map(Arc::new(ZigZagMap::new(&[2], -1, c.inv().unwrap())));
        for j in 0..=3 {
            let conj = SparseOperator::product([&k1, &series.coefficient(j).unwrap(), &k2inv]);
            for st in FockIndex::all_bounded(2, 3) {
                let v = FockVector::basis(st);
                assert_eq!(conj.apply(&v).unwrap(), hat.apply_order(j, &v).unwrap());
            }
        }
    }
    let vac = ket(&[0, 0]);
    for j in 0..=3 {
        assert_eq!(hat.apply_order(j, &vac), series.apply_order(j, &vac));
    }
}

#[test]
fn zigzag_operator_relations() {
    // K a± = (i q^{1/2})^{±1} a± K on each site.
    let k = zigzag_operator(&[1, 2], 1);
    let iu = &Scalar::i() * &Scalar::u_pow(1);
    let iu_inv = iu.inv().unwrap();
    for site in 1..=2 {
        for st in FockIndex::all_bounded(2, 3) {
            let v = FockVector::basis(st);
            let ap = SparseOperator::raise(site);
            let am = SparseOperator::lower(site);
            assert_eq!(k.compose(&ap).apply(&v).unwrap(), ap.compose(&k).scaled(&iu).apply(&v).unwrap());
            assert_eq!(k.compose(&am).apply(&v).unwrap(), am.compose(&k).scaled(&iu_inv).apply(&v).unwrap());
            let kk = SparseOperator::k_pow(site, 1);
            assert_eq!(k.compose(&kk).apply(&v).unwrap(), kk.compose(&k).apply(&v).unwrap());
        }
    }
}

#[test]
fn coefficients_do_not_depend_on_the_state_range() {
    let series = build_s(1, 1, 1, 2).unwrap();
    let small = series.entries(2);
    let large = series.entries(3);
    for e in &small {
        assert!(large.contains(e));
    }
    assert!(small.iter().any(|e| e.z_order == 0 && e.in_state == FockIndex::new(&[0, 0])
        && e.out_state == FockIndex::new(&[0, 0]) && e.coeff == "(1)/(1)"));
}

#[test]
fn yang_baxter_rank_one() {
    for (s, t) in LABELS {
        let r = verify_ybe(s, t, 1, 2, 2).unwrap();
        assert!(r.pass, "({s},{t}): {:?}", r.witnesses);
        assert_eq!(r.states_checked, 27);
    }
}

#[test]
fn yang_baxter_vacuum_order_zero() {
    let series = build_s(1, 1, 1, 0).unwrap();
    let vac = ket(&[0, 0]);
    assert_eq!(series.apply_order(0, &vac).unwrap(), vac);
    let _ = ZDegree::ZERO;
}

#[test]
fn symmetry_rank_one() {
    for (s, t) in LABELS {
        let r = verify_symmetry(s, t, 1, 4, 3).unwrap();
        assert!(r.pass, "({s},{t}): {:?}", r.witnesses);
    }
}

#[test]
fn symmetry_rank_two() {
    for (s, t) in LABELS {
        let r = verify_symmetry(s, t, 2, 4, 3).unwrap();
        assert!(r.pass, "({s},{t}): {:?}", r.witnesses);
        assert_eq!(r.states_checked, 256);
    }
}
