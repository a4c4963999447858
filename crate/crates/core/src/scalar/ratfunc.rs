use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use super::cyclotomic::{cyclotomic, cyclotomic_factors};
use super::{GaussianRational, LaurentPoly, ScalarError};

/// Exact rational function in `u = q^{1/2}` over the Gaussian rationals.
///
/// Canonical form: the denominator is a genuine polynomial with constant
/// term 1, all powers of `u` live in the numerator, and numerator and
/// denominator are coprime. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl Scalar {
    pub fn zero() -> Self {
        Self { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(LaurentPoly::from_int(n))
    }

    pub fn from_gaussian(c: GaussianRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn i() -> Self {
        Self::from_gaussian(GaussianRational::i())
    }

    /// `u^e = q^{e/2}`.
    pub fn u_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::u_pow(e))
    }

    /// `q^e`.
    pub fn q_pow(e: i64) -> Self {
        Self::u_pow(2 * e)
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self { num: p, den: LaurentPoly::one() }
    }

    /// Builds `num / den` and brings it to canonical form.
    pub fn from_ratio(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (a, n) = num.split_unit();
        let (b, d) = den.split_unit();
        let (n, d) = if d.is_monomial() {
            (n, d)
        } else {
            match cyclotomic_factors(&d) {
                Some(factors) => cancel_cyclotomic(n, d, &factors),
                None => {
                    let g = n.gcd(&d);
                    if g.is_one() {
                        (n, d)
                    } else {
                        (n.exact_div(&g).unwrap(), d.exact_div(&g).unwrap())
                    }
                }
            }
        };
        let c = d.lowest_coeff().unwrap().inv().unwrap();
        let (n, d) = if c.is_one() { (n, d) } else { (n.scale(&c), d.scale(&c)) };
        Self { num: n.shift(a - b), den: d }
    }

    /// Final normalization for an already reduced pair whose denominator is
    /// a polynomial with nonzero constant term.
    fn with_unit_constant(num: LaurentPoly, den: LaurentPoly) -> Self {
        let c = den.lowest_coeff().unwrap();
        if c.is_one() {
            return Self { num, den };
        }
        let c = c.inv().unwrap();
        Self { num: num.scale(&c), den: den.scale(&c) }
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a Laurent polynomial (denominator 1).
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        if rhs.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, n: i32) -> Result<Self, ScalarError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..n.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiplies by `u^k`; canonical form is preserved.
    pub fn shift(&self, k: i64) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Re-normalizes an already canonical value. Exposed so the
    /// idempotence of canonicalization can be tested.
    pub fn renormalized(&self) -> Self {
        Self::canonical(self.num.clone(), self.den.clone())
    }
}

/// Cancels the common factors of `n` and `d` when `d` is a product of
/// cyclotomic polynomials. Over `Q(i)` a `Φ_k` may split, so each prime
/// power `Φ_k^m` is cancelled through its gcd with `n`.
fn cancel_cyclotomic(
    mut n: LaurentPoly,
    mut d: LaurentPoly,
    factors: &[(u64, u32)],
) -> (LaurentPoly, LaurentPoly) {
    for &(k, mult) in factors {
        if n.is_monomial() {
            break;
        }
        if !may_vanish_at_primitive_root(&n, k) {
            continue;
        }
        let part = cyclotomic(k).pow(mult);
        let (_, poly) = n.split_unit();
        let (_, r) = poly.div_rem(&part);
        let g = part.gcd(&r);
        if !g.is_one() {
            n = n.exact_div(&g).expect("gcd divides the numerator");
            d = d.exact_div(&g).expect("gcd divides the denominator");
        }
    }
    (n, d)
}

fn cyclotomic_product(factors: &[(u64, u32)]) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for &(k, mult) in factors {
        for _ in 0..mult {
            p = &p * &cyclotomic(k);
        }
    }
    p
}

/// For denominators with the given factorizations, the cofactors
/// `lcm/d1`, `lcm/d2` (each up to sign) and the factorization of the lcm.
fn cofactors(f1: &[(u64, u32)], f2: &[(u64, u32)]) -> (LaurentPoly, LaurentPoly, Vec<(u64, u32)>) {
    let mut missing1 = Vec::new();
    let mut missing2 = Vec::new();
    let mut lcm = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < f1.len() || j < f2.len() {
        let a = f1.get(i).copied();
        let b = f2.get(j).copied();
        match (a, b) {
            (Some((ka, ma)), Some((kb, mb))) if ka == kb => {
                lcm.push((ka, ma.max(mb)));
                if mb > ma {
                    missing1.push((ka, mb - ma));
                } else if ma > mb {
                    missing2.push((ka, ma - mb));
                }
                i += 1;
                j += 1;
            }
            (Some((ka, ma)), Some((kb, _))) if ka < kb => {
                lcm.push((ka, ma));
                missing2.push((ka, ma));
                i += 1;
            }
            (Some((ka, ma)), None) => {
                lcm.push((ka, ma));
                missing2.push((ka, ma));
                i += 1;
            }
            (_, Some((kb, mb))) => {
                lcm.push((kb, mb));
                missing1.push((kb, mb));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    (cyclotomic_product(&missing1), cyclotomic_product(&missing2), lcm)
}

/// Numeric filter for a common factor of `p` and `Φ_k`: false only when `p`
/// is clearly nonzero at every primitive `k`-th root of unity, with a margin
/// far above the floating-point error.
fn may_vanish_at_primitive_root(p: &LaurentPoly, k: u64) -> bool {
    let coeffs: Vec<(i64, f64, f64)> = p
        .terms()
        .iter()
        .map(|(e, c)| {
            let (re, im) = c.to_f64_pair();
            (e.rem_euclid(k as i64), re, im)
        })
        .collect();
    let scale: f64 = coeffs.iter().map(|(_, re, im)| re.abs() + im.abs()).sum();
    if !scale.is_finite() {
        return true;
    }
    (1..=k).filter(|j| num_integer::gcd(*j, k) == 1).any(|j| {
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (e, cr, ci) in &coeffs {
            let theta = std::f64::consts::TAU * ((*e as u64 * j) % k) as f64 / k as f64;
            let (s, co) = theta.sin_cos();
            re += cr * co - ci * s;
            im += cr * s + ci * co;
        }
        re.hypot(im) <= 1e-6 * scale
    })
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<LaurentPoly> for Scalar {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Scalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        if let (Some(f1), Some(f2)) = (cyclotomic_factors(&self.den), cyclotomic_factors(&rhs.den)) {
            // Work over the lcm of the denominators.
            let (m1, mut m2, lcm) = cofactors(&f1, &f2);
            // Both denominators have constant term 1, so matching the
            // cofactors' constant terms makes d1·m1 = d2·m2.
            if m1.lowest_coeff() != m2.lowest_coeff() {
                m2 = -m2;
            }
            let num = &(&self.num * &m1) + &(&rhs.num * &m2);
            let den = &self.den * &m1;
            if num.is_zero() {
                return Scalar::zero();
            }
            let (n, d) = cancel_cyclotomic(num, den, &lcm);
            return Scalar::with_unit_constant(n, d);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::canonical(num, &self.den * &rhs.den)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { num: -&self.num, den: self.den.clone() }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        if rhs.num.is_monomial() && rhs.den.is_one() {
            let (e, c) = &rhs.num.terms()[0];
            return self.scale(c).shift(*e);
        }
        if self.num.is_monomial() && self.den.is_one() {
            let (e, c) = &self.num.terms()[0];
            return rhs.scale(c).shift(*e);
        }
        if let (Some(f1), Some(f2)) = (cyclotomic_factors(&self.den), cyclotomic_factors(&rhs.den)) {
            // Canonical inputs are already reduced, so only cross factors can cancel.
            let (n1, d2) = cancel_cyclotomic(self.num.clone(), rhs.den.clone(), &f2);
            let (n2, d1) = cancel_cyclotomic(rhs.num.clone(), self.den.clone(), &f1);
            return Scalar::with_unit_constant(&n1 * &n2, &d1 * &d2);
        }
        Scalar::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    /// Panics on division by zero; use [`Scalar::checked_div`] otherwise.
    fn div(self, rhs: &Scalar) -> Scalar {
        self.checked_div(rhs).expect("division by zero scalar")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if self.den.is_one() && rhs.den.is_one() {
            self.num = &self.num + &rhs.num;
        } else {
            *self = &*self + rhs;
        }
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::one()
    }
}

impl fmt::Display for Scalar {
    /// Canonical string `(<numerator>)/(<denominator>)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Scalar {
        Scalar::q_pow(1)
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(ScalarError::DivisionByZero));
        assert!(Scalar::zero().inv().is_err());
        assert!(Scalar::from_ratio(LaurentPoly::one(), LaurentPoly::zero()).is_err());
    }

    #[test]
    fn one_minus_q_squared_over_one_minus_q() {
        let one = Scalar::one();
        let a = &one - &(&q() * &q());
        let b = &one - &q();
        let r = &a / &b;
        assert_eq!(r, &one + &q());
        assert!(r.is_laurent());
    }

    #[test]
    fn u_times_u_is_q() {
        assert_eq!(&Scalar::u_pow(1) * &Scalar::u_pow(1), q());
    }

    #[test]
    fn i_times_i_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn canonical_denominator_has_unit_constant_term() {
        // q / (2q - 2q^3) = 1 / (2 - 2q^2) -> (1/2)/(1 - u^4)
        let num = LaurentPoly::q_pow(1);
        let den = &LaurentPoly::q_pow(1).scale(&GaussianRational::from_int(2))
            - &LaurentPoly::q_pow(3).scale(&GaussianRational::from_int(2));
        let s = Scalar::from_ratio(num, den).unwrap();
        assert_eq!(s.to_string(), "(1/2)/(1 - u^4)");
        assert_eq!(s.renormalized(), s);
    }

    #[test]
    fn sums_with_common_factor_collapse() {
        // 1/(1-q) - q/(1-q) = 1
        let b = &Scalar::one() - &q();
        let x = &(&Scalar::one() / &b) - &(&q() / &b);
        assert!(x.is_one());
    }
}
