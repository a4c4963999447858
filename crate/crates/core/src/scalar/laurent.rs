use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::GaussianRational;

/// A Laurent polynomial in the formal variable `u = q^{1/2}` with Gaussian
/// rational coefficients.
///
/// Terms are kept sorted by ascending exponent and zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i64, GaussianRational)>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    /// `c · u^e`.
    pub fn monomial(c: GaussianRational, e: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![(e, c)] }
        }
    }

    /// `u^e`.
    pub fn u_pow(e: i64) -> Self {
        Self::monomial(GaussianRational::one(), e)
    }

    /// `q^e = u^{2e}`.
    pub fn q_pow(e: i64) -> Self {
        Self::u_pow(2 * e)
    }

    /// Builds from arbitrary `(exponent, coefficient)` pairs, merging repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, GaussianRational)>>(it: I) -> Self {
        let mut raw: Vec<(i64, GaussianRational)> = it.into_iter().collect();
        raw.sort_by_key(|(e, _)| *e);
        let mut terms: Vec<(i64, GaussianRational)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc += &c,
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Self { terms }
    }

    pub fn terms(&self) -> &[(i64, GaussianRational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Coefficient of `u^e`.
    pub fn coeff(&self, e: i64) -> GaussianRational {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => GaussianRational::zero(),
        }
    }

    pub fn lowest_coeff(&self) -> Option<&GaussianRational> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn leading_coeff(&self) -> Option<&GaussianRational> {
        self.terms.last().map(|(_, c)| c)
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// Substitutes `u -> u^k` for `k >= 1`.
    pub fn dilate(&self, k: i64) -> Self {
        assert!(k >= 1, "dilation factor must be positive");
        Self {
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Splits off the lowest power of `u`: `self = u^k · p` with `p(0) != 0`.
    pub fn split_unit(&self) -> (i64, LaurentPoly) {
        match self.min_exp() {
            None => (0, Self::zero()),
            Some(k) => (k, self.shift(-k)),
        }
    }

    fn is_polynomial(&self) -> bool {
        self.min_exp().is_none_or(|e| e >= 0)
    }

    /// Polynomial long division over `Q(i)`. Both operands must have only
    /// non-negative exponents and `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        assert!(self.is_polynomial() && divisor.is_polynomial());
        let dlead_e = divisor.max_exp().unwrap() as usize;
        let Some(top) = self.max_exp() else {
            return (Self::zero(), Self::zero());
        };
        let top = top as usize;
        if top < dlead_e {
            return (Self::zero(), self.clone());
        }
        let lead = divisor.leading_coeff().unwrap();
        let dlead_inv = (!lead.is_one()).then(|| lead.inv().unwrap());
        let mut rem = vec![GaussianRational::zero(); top + 1];
        for (e, c) in &self.terms {
            rem[*e as usize] = c.clone();
        }
        let lower = &divisor.terms[..divisor.terms.len() - 1];
        let minus_one = -GaussianRational::one();
        let mut quot = Vec::new();
        for re in (dlead_e..=top).rev() {
            if rem[re].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut rem[re], GaussianRational::zero());
            let c = match &dlead_inv {
                Some(inv) => &c * inv,
                None => c,
            };
            let shift = re - dlead_e;
            for (e, d) in lower {
                let slot = &mut rem[*e as usize + shift];
                if d.is_one() {
                    *slot -= &c;
                } else if *d == minus_one {
                    *slot += &c;
                } else {
                    *slot -= &(&c * d);
                }
            }
            quot.push((shift as i64, c));
        }
        quot.reverse();
        let rem_terms = rem
            .into_iter()
            .enumerate()
            .take(dlead_e)
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e as i64, c))
            .collect();
        (LaurentPoly { terms: quot }, LaurentPoly { terms: rem_terms })
    }

    /// Exact quotient of Laurent polynomials when `divisor | self` up to a unit
    /// `u^k`; `None` if there is a remainder.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Option<LaurentPoly> {
        let (a, p) = self.split_unit();
        let (b, d) = divisor.split_unit();
        let (q, r) = p.div_rem(&d);
        r.is_zero().then(|| q.shift(a - b))
    }

    /// Greatest common divisor of the polynomial parts (units `u^k` ignored),
    /// normalized to constant term 1.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let (_, mut a) = self.split_unit();
        let (_, mut b) = other.split_unit();
        if a.is_zero() {
            return b.normalize_constant();
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            // strip u-factors: the polynomial parts are coprime to u by construction
            b = r.split_unit().1;
        }
        a.normalize_constant()
    }

    /// Scales so that the lowest-degree coefficient is 1.
    pub fn normalize_constant(&self) -> LaurentPoly {
        match self.lowest_coeff() {
            None => Self::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().unwrap()),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &rhs.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        LaurentPoly { terms: out }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if self.is_one() {
            return rhs.clone();
        }
        if rhs.is_one() {
            return self.clone();
        }
        let lo = self.min_exp().unwrap() + rhs.min_exp().unwrap();
        let hi = self.max_exp().unwrap() + rhs.max_exp().unwrap();
        let mut dense = vec![GaussianRational::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                dense[(ea + eb - lo) as usize] += &(ca * cb);
            }
        }
        LaurentPoly {
            terms: dense
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (k as i64 + lo, c))
                .collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents, e.g. `1 - u^2 + 2*u^4`, `u^-1 + u`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mut body = if *e == 0 {
                c.to_string()
            } else {
                let mono = if *e == 1 { "u".to_string() } else { format!("u^{e}") };
                if c.is_one() {
                    mono
                } else if (-c).is_one() {
                    format!("-{mono}")
                } else {
                    format!("{c}*{mono}")
                }
            };
            if k > 0 {
                if let Some(rest) = body.strip_prefix('-') {
                    body = rest.to_string();
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
            }
            write!(f, "{body}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(coeffs.iter().map(|&(e, c)| (e, GaussianRational::from_int(c))))
    }

    #[test]
    fn display_orders_by_exponent() {
        assert_eq!(p(&[(2, -1), (0, 1)]).to_string(), "1 - u^2");
        assert_eq!(p(&[(-1, 1), (1, 1)]).to_string(), "u^-1 + u");
        assert_eq!(p(&[(4, 3)]).to_string(), "3*u^4");
    }

    #[test]
    fn long_division_matches_hand_expansion() {
        // (1 - u^4) / (1 - u^2) = 1 + u^2
        let (q, r) = p(&[(0, 1), (4, -1)]).div_rem(&p(&[(0, 1), (2, -1)]));
        assert_eq!(q, p(&[(0, 1), (2, 1)]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_strips_units() {
        let a = &p(&[(0, 1), (2, -1)]) * &p(&[(3, 1)]);
        let b = p(&[(0, 1), (4, -1)]);
        assert_eq!(a.gcd(&b), p(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn from_terms_merges_and_cancels() {
        assert!(p(&[(1, 2), (1, -2)]).is_zero());
        assert_eq!(p(&[(1, 2), (1, 1), (0, 1)]), p(&[(0, 1), (1, 3)]));
    }
}
