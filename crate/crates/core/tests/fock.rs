use proptest::prelude::*;

use tetra_core::fock::{
    apply_generator, pairing, FockIndex, FockVector, Generator, SparseOperator,
};
use tetra_core::scalar::Scalar;

fn vector(arity: usize) -> impl Strategy<Value = FockVector> {
    proptest::collection::vec((proptest::collection::vec(0u32..5, arity), -3i64..4, -3i64..4), 1..5)
        .prop_map(|terms| {
            FockVector::from_terms(terms.into_iter().map(|(m, c, e)| {
                (FockIndex::new(&m), &Scalar::from_int(c) * &Scalar::u_pow(e))
            }))
        })
}

fn generator() -> impl Strategy<Value = Generator> {
    prop_oneof![
        Just(Generator::APlus),
        Just(Generator::AMinus),
        Just(Generator::K),
        Just(Generator::KInv),
        Just(Generator::H),
    ]
}

#[test]
fn qosc_examples() {
    let ket = |m: u32| FockVector::basis(FockIndex::new(&[m]));
    // a+ a- on |0> vanishes, as does (1 - q^-1 k^2)|0>.
    let ap = SparseOperator::raise(1);
    let am = SparseOperator::lower(1);
    let k2 = SparseOperator::k_pow(1, 2);
    assert!(ap.compose(&am).apply(&ket(0)).unwrap().is_zero());
    let rhs = SparseOperator::identity().minus(&k2.scaled(&Scalar::q_pow(-1)));
    assert!(rhs.apply(&ket(0)).unwrap().is_zero());
    // a- a+ |0> = (1 - q^2)|0>
    let one_minus_q2 = &Scalar::one() - &Scalar::q_pow(2);
    assert_eq!(am.compose(&ap).apply(&ket(0)).unwrap(), ket(0).scale(&one_minus_q2));
    // k a+ |3> = q a+ k |3> = q^{9/2}|4>
    let k = SparseOperator::k_pow(1, 1);
    let expected = ket(4).scale(&Scalar::u_pow(9));
    assert_eq!(k.compose(&ap).apply(&ket(3)).unwrap(), expected);
    assert_eq!(ap.compose(&k).scaled(&Scalar::q_pow(1)).apply(&ket(3)).unwrap(), expected);
}

#[test]
fn pairing_transfers_the_right_action() {
    // <m| a+ = (1 - q^{2m}) <m-1|  and  <m| a- = <m+1|
    for m in 0..=6u32 {
        for m2 in 0..=7u32 {
            let v = FockVector::basis(FockIndex::new(&[m2]));
            let bra = FockIndex::new(&[m]);
            let lhs = pairing(&bra, &apply_generator(Generator::APlus, 1, &v).unwrap()).unwrap();
            let rhs = if m == 0 {
                Scalar::zero()
            } else {
                let f = &Scalar::one() - &Scalar::q_pow(2 * m as i64);
                &f * &pairing(&FockIndex::new(&[m - 1]), &v).unwrap()
            };
            assert_eq!(lhs, rhs, "a+ m={m} m'={m2}");
            let lhs = pairing(&bra, &apply_generator(Generator::AMinus, 1, &v).unwrap()).unwrap();
            let rhs = pairing(&FockIndex::new(&[m + 1]), &v).unwrap();
            assert_eq!(lhs, rhs, "a- m={m} m'={m2}");
        }
    }
}

proptest! {
    #[test]
    fn raising_and_lowering_shift_the_grading(v in vector(3), site in 1usize..4) {
        for (gen, shift) in [(Generator::APlus, 1i64), (Generator::AMinus, -1)] {
            let w = apply_generator(gen, site, &v).unwrap();
            for (idx, _) in w.terms() {
                let pre = idx.with(site - 1, (idx.get(site - 1) as i64 - shift) as u32);
                prop_assert!(!v.coeff(&pre).is_zero());
            }
        }
    }

    #[test]
    fn composition_agrees_with_sequential_application(
        v in vector(2), g1 in generator(), g2 in generator(), s1 in 1usize..3, s2 in 1usize..3
    ) {
        let op = SparseOperator::site(s1, g1.site_op()).compose(&SparseOperator::site(s2, g2.site_op()));
        let seq = apply_generator(g1, s1, &apply_generator(g2, s2, &v).unwrap()).unwrap();
        prop_assert_eq!(op.apply(&v).unwrap(), seq);
    }

    #[test]
    fn composition_is_associative(v in vector(2), g in proptest::collection::vec(generator(), 3)) {
        let ops: Vec<_> = g.iter().enumerate()
            .map(|(n, g)| SparseOperator::site(n % 2 + 1, g.site_op()))
            .collect();
        let left = ops[0].compose(&ops[1]).compose(&ops[2]);
        let right = ops[0].compose(&ops[1].compose(&ops[2]));
        prop_assert_eq!(left.apply(&v).unwrap(), right.apply(&v).unwrap());
    }
}
