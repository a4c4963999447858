//! q-combinatorics: Pochhammer symbols, Gaussian binomials and q-integers,
//! all in a base `p = u^e` given by its exponent `e` in `u = q^{1/2}`.

use num_traits::One;

use super::{GaussianRational, LaurentPoly, Scalar, ScalarError};

/// `(p; p)_m = ∏_{k=1}^m (1 - p^k)` with `p = u^base_exponent`.
pub fn q_pochhammer(base_exponent: i64, length: i64) -> Result<LaurentPoly, ScalarError> {
    if length < 0 {
        return Err(ScalarError::NegativeLength(length));
    }
    let mut acc = LaurentPoly::one();
    for k in 1..=length {
        let factor = &LaurentPoly::one() - &LaurentPoly::u_pow(base_exponent * k);
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// Shifted product `∏_{k=from+1}^{to} (1 - p^k)`, i.e. `(p;p)_to / (p;p)_from`.
pub fn q_pochhammer_ratio(base_exponent: i64, from: i64, to: i64) -> LaurentPoly {
    let mut acc = LaurentPoly::one();
    for k in (from + 1)..=to {
        acc = &acc * &(&LaurentPoly::one() - &LaurentPoly::u_pow(base_exponent * k));
    }
    acc
}

/// Gaussian binomial `(p)_m / ((p)_k (p)_{m-k})` in base `p = u^base_exponent`;
/// zero outside `0 <= k <= m`.
pub fn q_binomial(m: i64, k: i64, base_exponent: i64) -> LaurentPoly {
    if m < 0 || k < 0 || k > m {
        return LaurentPoly::zero();
    }
    let num = q_pochhammer_ratio(base_exponent, m - k, m);
    let den = q_pochhammer(base_exponent, k).expect("k >= 0");
    num.exact_div(&den)
        .expect("Gaussian binomial is a polynomial")
}

/// Symmetric q-integer `[m]_p = (p^m - p^{-m}) / (p - p^{-1})` as a Laurent
/// polynomial `p^{m-1} + p^{m-3} + ... + p^{1-m}`.
pub fn q_integer(m: i64, base_exponent: i64) -> LaurentPoly {
    if m < 0 {
        return -q_integer(-m, base_exponent);
    }
    LaurentPoly::from_terms(
        (0..m).map(|j| (base_exponent * (m - 1 - 2 * j), GaussianRational::one())),
    )
}

/// `[m]_p! = ∏_{k=1}^m [k]_p`, with `[0]_p! = 1`.
pub fn q_integer_factorial(m: i64, base_exponent: i64) -> Result<Scalar, ScalarError> {
    if m < 0 {
        return Err(ScalarError::NegativeLength(m));
    }
    let mut acc = LaurentPoly::one();
    for k in 1..=m {
        acc = &acc * &q_integer(k, base_exponent);
    }
    Ok(Scalar::from_poly(acc))
}
