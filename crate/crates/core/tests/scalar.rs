use proptest::prelude::*;

use tetra_core::scalar::{
    q_binomial, q_integer, q_integer_factorial, q_pochhammer, GaussianRational, LaurentPoly,
    Scalar,
};

fn poly() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((-3i64..4, -3i64..4, -2i64..3), 0..4).prop_map(|terms| {
        LaurentPoly::from_terms(terms.into_iter().map(|(e, re, im)| {
            let c = &GaussianRational::from_int(re)
                + &(&GaussianRational::i() * &GaussianRational::from_int(im));
            (e, c)
        }))
    })
}

fn nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    poly().prop_filter("nonzero", |p| !p.is_zero())
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), nonzero_poly()).prop_map(|(n, d)| Scalar::from_ratio(n, d).unwrap())
}

/// Products of `1 ∓ u^k`: the denominators that arise in practice.
fn cyclotomic_like() -> impl Strategy<Value = LaurentPoly> {
    proptest::collection::vec((1i64..7, any::<bool>()), 0..4).prop_map(|fs| {
        fs.into_iter().fold(LaurentPoly::one(), |acc, (k, plus)| {
            let f = if plus {
                &LaurentPoly::one() + &LaurentPoly::u_pow(k)
            } else {
                &LaurentPoly::one() - &LaurentPoly::u_pow(k)
            };
            &acc * &f
        })
    })
}

/// Numerator and denominator drawn so that common factors are likely.
fn cyclotomic_ratio() -> impl Strategy<Value = (LaurentPoly, LaurentPoly)> {
    (poly(), cyclotomic_like(), cyclotomic_like())
        .prop_map(|(n, shared, d)| (&n * &shared, &d * &shared))
}

/// `p/q` as a scalar equals `num/den`, checked by cross-multiplication, and
/// the scalar is reduced according to the Euclidean gcd.
fn represents(s: &Scalar, num: &LaurentPoly, den: &LaurentPoly) -> bool {
    let cross = &(s.numer() * den) - &(num * s.denom());
    let g = s.numer().gcd(s.denom());
    cross.is_zero() && (s.is_zero() || g.is_one())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_fast_paths_match_cross_multiplication(
        (n1, d1) in cyclotomic_ratio(),
        (n2, d2) in cyclotomic_ratio(),
    ) {
        let x = Scalar::from_ratio(n1.clone(), d1.clone()).unwrap();
        let y = Scalar::from_ratio(n2.clone(), d2.clone()).unwrap();
        prop_assert!(represents(&x, &n1, &d1));
        let sum_num = &(&n1 * &d2) + &(&n2 * &d1);
        prop_assert!(represents(&(&x + &y), &sum_num, &(&d1 * &d2)));
        prop_assert!(represents(&(&x - &y), &(&(&n1 * &d2) - &(&n2 * &d1)), &(&d1 * &d2)));
        prop_assert!(represents(&(&x * &y), &(&n1 * &n2), &(&d1 * &d2)));
        prop_assert_eq!((&x + &y).renormalized(), &x + &y);
        prop_assert_eq!((&x * &y).renormalized(), &x * &y);
    }

    #[test]
    fn addition_and_multiplication_associate(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn commutative_and_distributive(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn inverses(a in scalar()) {
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert!((&a / &a).is_one());
        }
    }

    #[test]
    fn canonical_form_is_idempotent(a in scalar()) {
        prop_assert_eq!(a.renormalized(), a.clone());
        let lowest = a.denom().lowest_coeff().unwrap().clone();
        prop_assert!(lowest == GaussianRational::from_int(1));
        prop_assert_eq!(a.denom().min_exp(), Some(0));
    }
}

#[test]
fn binomial_symmetry_and_pascal() {
    for e in [2, 4, 8] {
        for m in 0..=8i64 {
            for k in 0..=m {
                assert_eq!(q_binomial(m, k, e), q_binomial(m, m - k, e));
                if m >= 1 {
                    let rhs = &q_binomial(m - 1, k, e)
                        + &q_binomial(m - 1, k - 1, e).shift(e * (m - k));
                    assert_eq!(q_binomial(m, k, e), rhs, "m={m} k={k} e={e}");
                }
            }
        }
    }
}

#[test]
fn binomial_out_of_range_is_zero() {
    assert!(q_binomial(1, 2, 4).is_zero());
    assert!(q_binomial(3, -1, 4).is_zero());
    assert!(q_binomial(5, 0, 4).is_one());
}

#[test]
fn q_integer_matches_defining_ratio() {
    for e in [1, 2, 4] {
        let p = |k: i64| Scalar::u_pow(e * k);
        for m in 0..=6 {
            let ratio = &(&p(m) - &p(-m)) / &(&p(1) - &p(-1));
            assert_eq!(Scalar::from_poly(q_integer(m, e)), ratio, "m={m} e={e}");
        }
    }
}

#[test]
fn q_factorial_small() {
    assert!(q_integer_factorial(0, 2).unwrap().is_one());
    let two = Scalar::from_poly(&LaurentPoly::q_pow(1) + &LaurentPoly::q_pow(-1));
    assert_eq!(q_integer_factorial(2, 2).unwrap(), two);
    assert!(q_integer_factorial(-1, 2).is_err());
}

#[test]
fn pochhammer_product_expansion() {
    // (q^2;q^2)_2 = (1 - q^2)(1 - q^4) = 1 - q^2 - q^4 + q^6
    let expected = LaurentPoly::from_terms([
        (0, GaussianRational::from_int(1)),
        (4, GaussianRational::from_int(-1)),
        (8, GaussianRational::from_int(-1)),
        (12, GaussianRational::from_int(1)),
    ]);
    assert_eq!(q_pochhammer(4, 2).unwrap(), expected);
    assert!(q_pochhammer(2, -1).is_err());
}
