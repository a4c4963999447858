use proptest::prelude::*;

use tetra_core::fock::{FockIndex, FockVector};
use tetra_core::r3d::{
    apply_r, coefficient_csv, r_coefficient, verify_conservation, verify_intertwining,
    verify_involution, verify_tetrahedron,
};

#[test]
fn involution_up_to_three() {
    let r = verify_involution(3);
    assert!(r.pass, "{:?}", r.witnesses);
    assert_eq!(r.states_checked, 64);
}

#[test]
fn involution_counts() {
    assert_eq!(verify_involution(2).states_checked, 27);
    assert!(verify_involution(0).pass);
}

#[test]
fn intertwining_up_to_three() {
    let r = verify_intertwining(3);
    assert!(r.pass, "{:?}", r.witnesses);
    assert_eq!(r.checks, 10 * 64);
}

#[test]
fn conservation_up_to_three() {
    assert!(verify_conservation(3).pass);
}

#[test]
fn tetrahedron_vacuum_and_small() {
    assert!(verify_tetrahedron(0).pass);
    let r = verify_tetrahedron(1);
    assert!(r.pass, "{:?}", r.witnesses);
    assert_eq!(r.states_checked, 64);
}

#[test]
fn tetrahedron_up_to_two() {
    let r = verify_tetrahedron(2);
    assert!(r.pass, "{:?}", r.witnesses);
    assert_eq!(r.states_checked, 729);
}

#[test]
fn vacuum_pair_in_first_two_slots_is_inert() {
    for k in 0..=4 {
        for a in 0..=5 {
            for b in 0..=5 {
                for c in 0..=5 {
                    let v = r_coefficient(a, b, c, 0, 0, k);
                    let expected = a == 0 && b == 0 && c == k;
                    assert_eq!(v.is_one(), expected, "({a},{b},{c}) <- (0,0,{k})");
                    assert_eq!(v.is_zero(), !expected);
                }
            }
        }
    }
}

#[test]
fn csv_dump_shape() {
    let csv = coefficient_csv(1);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("a,b,c,i,j,k,coeff"));
    assert_eq!(lines.next(), Some("0,0,0,0,0,0,(1)/(1)"));
    assert!(csv.contains("\n1,0,1,0,1,0,(1)/(1)\n"));
    assert!(csv.contains("\n0,1,0,0,1,0,(-u^2)/(1)\n"));
}

proptest! {
    #[test]
    fn nonzero_coefficients_conserve(a in 0u32..5, b in 0u32..5, c in 0u32..5,
                                     i in 0u32..5, j in 0u32..5, k in 0u32..5) {
        if !r_coefficient(a, b, c, i, j, k).is_zero() {
            prop_assert!(a + b == i + j && b + c == j + k);
        }
    }

    #[test]
    fn output_support_is_bounded(i in 0u32..6, j in 0u32..6, k in 0u32..6) {
        let v = apply_r([1, 2, 3], &FockVector::basis(FockIndex::new(&[i, j, k]))).unwrap();
        prop_assert!(v.len() as u32 <= (i + j).min(j + k) + 1);
        for (idx, _) in v.terms() {
            prop_assert_eq!(idx.get(0) + idx.get(1), i + j);
            prop_assert_eq!(idx.get(1) + idx.get(2), j + k);
        }
    }

    #[test]
    fn r_on_embedded_sites_matches_r123(m in proptest::collection::vec(0u32..3, 5)) {
        // R acting on sites (2,4,5) of a 5-site state equals R123 on the
        // extracted triple with the spectators carried along.
        let full = FockVector::basis(FockIndex::new(&m));
        let got = apply_r([2, 4, 5], &full).unwrap();
        let small = apply_r([1, 2, 3], &FockVector::basis(FockIndex::new(&[m[1], m[3], m[4]]))).unwrap();
        let expected = FockVector::from_terms(small.terms().map(|(t, c)| {
            (FockIndex::new(&[m[0], t.get(0), m[2], t.get(1), t.get(2)]), c.clone())
        }));
        prop_assert_eq!(got, expected);
    }
}
