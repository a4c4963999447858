use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ScalarError;

/// An element `re + im·i` of the Gaussian rationals `Q(i)`.
///
/// Gaussian integers with both parts in `i64` are stored inline; everything
/// else falls back to big rationals. The representation is unique, so the
/// derived comparisons are mathematical.
#[derive(Clone, PartialEq, Eq)]
pub struct GaussianRational(Repr);

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Small(i64, i64),
    Big(BigRational, BigRational),
}

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn small(r: &BigRational) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        match (small(&re), small(&im)) {
            (Some(a), Some(b)) => Self(Repr::Small(a, b)),
            _ => Self(Repr::Big(re, im)),
        }
    }

    fn small_or_big(re: Option<i64>, im: Option<i64>, fallback: impl FnOnce() -> Self) -> Self {
        match (re, im) {
            (Some(a), Some(b)) => Self(Repr::Small(a, b)),
            _ => fallback(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self(Repr::Small(n, 0))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self(Repr::Small(0, 1))
    }

    /// `i^e` for any integer exponent.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    fn parts(&self) -> (BigRational, BigRational) {
        match &self.0 {
            Repr::Small(a, b) => (big(*a), big(*b)),
            Repr::Big(a, b) => (a.clone(), b.clone()),
        }
    }

    pub fn re(&self) -> BigRational {
        self.parts().0
    }

    pub fn im(&self) -> BigRational {
        self.parts().1
    }

    pub fn is_real(&self) -> bool {
        match &self.0 {
            Repr::Small(_, b) => *b == 0,
            Repr::Big(_, b) => b.is_zero(),
        }
    }

    pub fn conj(&self) -> Self {
        -&self.conj_neg()
    }

    /// `-conj(self)`, i.e. `-re + im·i`.
    fn conj_neg(&self) -> Self {
        match &self.0 {
            Repr::Small(a, b) => match a.checked_neg() {
                Some(na) => Self(Repr::Small(na, *b)),
                None => Self::new(-big(*a), big(*b)),
            },
            Repr::Big(a, b) => Self::new(-a.clone(), b.clone()),
        }
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Repr::Small(a, 0) = self.0 {
            if a == 1 || a == -1 {
                return Ok(self.clone());
            }
        }
        let (re, im) = self.parts();
        if im.is_zero() {
            return Ok(Self::new(re.recip(), BigRational::zero()));
        }
        let n = &re * &re + &im * &im;
        Ok(Self::new(&re / &n, -&im / &n))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    /// Lossy conversion for numeric filters and spot checks; NaN when out of range.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        match &self.0 {
            Repr::Small(a, b) => (*a as f64, *b as f64),
            Repr::Big(a, b) => {
                let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
                (f(a), f(b))
            }
        }
    }
}

impl Default for GaussianRational {
    fn default() -> Self {
        Self::zero()
    }
}

impl Hash for GaussianRational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(a, b) => {
                0u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            Repr::Big(a, b) => {
                1u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
        }
    }
}

impl Zero for GaussianRational {
    fn zero() -> Self {
        Self(Repr::Small(0, 0))
    }
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, 0))
    }
}

impl One for GaussianRational {
    fn one() -> Self {
        Self(Repr::Small(1, 0))
    }
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 0))
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let (re, im) = (a.checked_add(*c), b.checked_add(*d));
            return GaussianRational::small_or_big(re, im, || {
                GaussianRational::new(big(*a) + big(*c), big(*b) + big(*d))
            });
        }
        let ((a, b), (c, d)) = (self.parts(), rhs.parts());
        GaussianRational::new(a + c, b + d)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let (re, im) = (a.checked_sub(*c), b.checked_sub(*d));
            return GaussianRational::small_or_big(re, im, || {
                GaussianRational::new(big(*a) - big(*c), big(*b) - big(*d))
            });
        }
        let ((a, b), (c, d)) = (self.parts(), rhs.parts());
        GaussianRational::new(a - c, b - d)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &rhs.0) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            let re = a * c - b * d;
            let im = a * d + b * c;
            return GaussianRational::small_or_big(re.to_i64(), im.to_i64(), || {
                GaussianRational::new(
                    BigRational::from_integer(BigInt::from(re)),
                    BigRational::from_integer(BigInt::from(im)),
                )
            });
        }
        let ((a, b), (c, d)) = (self.parts(), rhs.parts());
        // Most coefficients in practice are real; skip the cross terms.
        match (b.is_zero(), d.is_zero()) {
            (true, true) => GaussianRational::new(a * c, BigRational::zero()),
            (true, false) => GaussianRational::new(&a * &c, a * d),
            (false, true) => GaussianRational::new(&a * &c, b * c),
            (false, false) => GaussianRational::new(&a * &c - &b * &d, a * d + b * c),
        }
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero; use [`GaussianRational::checked_div`] otherwise.
    fn div(self, rhs: &GaussianRational) -> GaussianRational {
        self.checked_div(rhs).expect("division by zero Gaussian rational")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, rhs: GaussianRational) -> GaussianRational {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: &GaussianRational) {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&mut self.0, &rhs.0) {
            if let (Some(x), Some(y)) = (a.checked_add(*c), b.checked_add(*d)) {
                *a = x;
                *b = y;
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, rhs: &GaussianRational) {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&mut self.0, &rhs.0) {
            if let (Some(x), Some(y)) = (a.checked_sub(*c), b.checked_sub(*d)) {
                *a = x;
                *b = y;
                return;
            }
        }
        *self = &*self - rhs;
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        match &self.0 {
            Repr::Small(a, b) => match (a.checked_neg(), b.checked_neg()) {
                (Some(x), Some(y)) => GaussianRational(Repr::Small(x, y)),
                _ => GaussianRational::new(-big(*a), -big(*b)),
            },
            Repr::Big(a, b) => GaussianRational::new(-a.clone(), -b.clone()),
        }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        -&self
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussianRational {
    /// `3`, `-1/2`, `i`, `-2i`, `(1+2i)`, `(1/2-i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.parts();
        let im_part = |im: &BigRational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im).is_one() {
                "-i".to_string()
            } else {
                format!("{}i", fmt_rat(im))
            }
        };
        if im.is_zero() {
            write!(f, "{}", fmt_rat(&re))
        } else if re.is_zero() {
            write!(f, "{}", im_part(&im))
        } else {
            let sep = if im.is_negative() { "" } else { "+" };
            write!(f, "({}{}{})", fmt_rat(&re), sep, im_part(&im))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(&i * &i, -GaussianRational::one());
        assert_eq!(GaussianRational::i_pow(-1), -GaussianRational::i());
        assert_eq!(GaussianRational::i_pow(6), -GaussianRational::one());
    }

    #[test]
    fn inverse_of_complex() {
        let z = GaussianRational::new(big(1), big(2));
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, GaussianRational::one());
        assert_eq!(w.to_string(), "(1/5-2/5i)");
        assert!(GaussianRational::zero().inv().is_err());
    }

    #[test]
    fn overflow_promotes_and_sums_demote() {
        let m = GaussianRational::from_int(i64::MAX);
        let s = &m + &GaussianRational::one();
        assert_eq!(s.to_string(), "9223372036854775808");
        let back = &s - &GaussianRational::one();
        assert_eq!(back, m);
        let p = &m * &m;
        assert_eq!(&(&p / &m), &m);
        let half = GaussianRational::from_ratio(1, 2);
        assert_eq!(&half + &half, GaussianRational::one());
        assert!((&half + &half).is_one());
    }
}
