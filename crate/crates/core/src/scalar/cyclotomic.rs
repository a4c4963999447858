use std::sync::{Arc, LazyLock};

use dashmap::DashMap;

use super::LaurentPoly;

static CYCLOTOMIC: LazyLock<DashMap<u64, Arc<LaurentPoly>>> = LazyLock::new(DashMap::new);

type Factorization = Option<Arc<[(u64, u32)]>>;
static FACTORIZATIONS: LazyLock<DashMap<LaurentPoly, Factorization>> = LazyLock::new(DashMap::new);

/// Cache entries beyond this many are not stored.
const MAX_CACHED: usize = 1 << 16;

/// The `k`-th cyclotomic polynomial in `u`.
pub fn cyclotomic(k: u64) -> Arc<LaurentPoly> {
    assert!(k >= 1);
    if let Some(p) = CYCLOTOMIC.get(&k) {
        return p.clone();
    }
    let mut p = &LaurentPoly::u_pow(k as i64) - &LaurentPoly::one();
    for d in 1..k {
        if k % d == 0 {
            p = p.exact_div(&cyclotomic(d)).expect("cyclotomic divisor");
        }
    }
    let p = Arc::new(p);
    CYCLOTOMIC.insert(k, p.clone());
    p
}

fn euler_phi(mut k: u64) -> u64 {
    let mut phi = k;
    let mut p = 2;
    while p * p <= k {
        if k % p == 0 {
            while k % p == 0 {
                k /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if k > 1 {
        phi -= phi / k;
    }
    phi
}

/// Writes a polynomial with nonzero constant term as a constant times a
/// product of cyclotomic polynomials `Φ_k` with `k <= 2·deg`. Returns the
/// `(k, multiplicity)` list, or `None` if no such factorization exists.
pub fn cyclotomic_factors(p: &LaurentPoly) -> Factorization {
    if let Some(f) = FACTORIZATIONS.get(p) {
        return f.clone();
    }
    let f = factor_uncached(p);
    if FACTORIZATIONS.len() < MAX_CACHED {
        FACTORIZATIONS.insert(p.clone(), f.clone());
    }
    f
}

fn factor_uncached(p: &LaurentPoly) -> Factorization {
    let deg = p.max_exp()? as u64;
    if p.min_exp() != Some(0) {
        return None;
    }
    let mut rest = p.clone();
    let mut out = Vec::new();
    let mut k = 1;
    while rest.max_exp().unwrap_or(0) > 0 {
        if k > 2 * deg {
            return None;
        }
        let remaining = rest.max_exp().unwrap() as u64;
        if euler_phi(k) <= remaining {
            let phi = cyclotomic(k);
            let mut mult = 0;
            while let Some(q) = rest.exact_div(&phi) {
                rest = q;
                mult += 1;
            }
            if mult > 0 {
                out.push((k, mult));
            }
        }
        k += 1;
    }
    Some(out.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1).to_string(), "-1 + u");
        assert_eq!(cyclotomic(4).to_string(), "1 + u^2");
        assert_eq!(cyclotomic(6).to_string(), "1 - u + u^2");
    }

    #[test]
    fn factors_q_pochhammer() {
        // (1-u^2)(1-u^4) = Φ1² Φ2² Φ4 up to sign
        let p = &(&LaurentPoly::one() - &LaurentPoly::u_pow(2))
            * &(&LaurentPoly::one() - &LaurentPoly::u_pow(4));
        let f = cyclotomic_factors(&p).unwrap();
        assert_eq!(&*f, &[(1, 2), (2, 2), (4, 1)]);
        let q = &LaurentPoly::one() + &LaurentPoly::u_pow(1).scale(&crate::scalar::GaussianRational::from_int(3));
        assert!(cyclotomic_factors(&q).is_none());
    }
}
