use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use smallvec::SmallVec;

use crate::scalar::Scalar;

/// Occupation numbers `(m_1, ..., m_n)` of a basis state of `F^{⊗n}`.
///
/// Ordering is lexicographic, which fixes iteration and serialization order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FockIndex(SmallVec<[u32; 8]>);

impl FockIndex {
    pub fn new(occupation: &[u32]) -> Self {
        Self(SmallVec::from_slice(occupation))
    }

    pub fn vacuum(arity: usize) -> Self {
        Self(SmallVec::from_elem(0, arity))
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    /// Occupation at a 0-based position.
    pub fn get(&self, pos: usize) -> u32 {
        self.0[pos]
    }

    pub fn set(&mut self, pos: usize, m: u32) {
        self.0[pos] = m;
    }

    pub fn with(&self, pos: usize, m: u32) -> Self {
        let mut out = self.clone();
        out.0[pos] = m;
        out
    }

    /// Total occupation, the eigenvalue of `h_1 + ... + h_n`.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&m| m as u64).sum()
    }

    pub fn concat(&self, other: &FockIndex) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Self(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Self {
        Self::new(&self.0[from..to])
    }

    /// All states with every occupation `≤ max`, in lexicographic order.
    pub fn all_bounded(arity: usize, max: u32) -> Vec<FockIndex> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; arity];
        loop {
            out.push(FockIndex::new(&cur));
            let mut pos = arity;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                if cur[pos] < max {
                    cur[pos] += 1;
                    cur[pos + 1..].iter_mut().for_each(|m| *m = 0);
                    break;
                }
            }
        }
    }

    /// All states with total occupation `≤ max_total`, in lexicographic order.
    pub fn all_total_bounded(arity: usize, max_total: u32) -> Vec<FockIndex> {
        Self::all_bounded(arity, max_total)
            .into_iter()
            .filter(|s| s.total() <= max_total as u64)
            .collect()
    }
}

impl From<&[u32]> for FockIndex {
    fn from(s: &[u32]) -> Self {
        Self::new(s)
    }
}

impl<const N: usize> From<[u32; N]> for FockIndex {
    fn from(s: [u32; N]) -> Self {
        Self::new(&s)
    }
}

impl fmt::Debug for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Display for FockIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for FockIndex {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.as_slice().serialize(s)
    }
}

/// Finite linear combination of basis states with exact coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<FockIndex, Scalar>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(idx: FockIndex) -> Self {
        Self::monomial(idx, Scalar::one())
    }

    pub fn monomial(idx: FockIndex, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(idx, c);
        v
    }

    pub fn from_terms<I: IntoIterator<Item = (FockIndex, Scalar)>>(it: I) -> Self {
        let mut v = Self::zero();
        for (idx, c) in it {
            v.add_term(idx, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockIndex, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (FockIndex, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, idx: &FockIndex) -> Scalar {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// Arity of the stored states; `None` for the zero vector.
    pub fn arity(&self) -> Option<usize> {
        self.terms.keys().next().map(FockIndex::arity)
    }

    /// Adds `c·|idx⟩`, dropping the entry if it cancels.
    pub fn add_term(&mut self, idx: FockIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c·other`.
    pub fn add_scaled(&mut self, other: &FockVector, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (idx, x) in &other.terms {
            let y = if unit { x.clone() } else { x * c };
            self.add_term(idx.clone(), y);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    /// Applies a per-state map `|idx⟩ ↦ v_idx` linearly.
    pub fn map_linear<F>(&self, mut f: F) -> Self
    where
        F: FnMut(&FockIndex) -> FockVector,
    {
        let mut out = Self::zero();
        for (idx, c) in &self.terms {
            out.add_scaled(&f(idx), c);
        }
        out
    }

    /// Tensor product `self ⊗ other` on the concatenated sites.
    pub fn tensor(&self, other: &FockVector) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }
}

impl Add for &FockVector {
    type Output = FockVector;
    fn add(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &FockVector {
    type Output = FockVector;
    fn sub(self, rhs: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Neg for &FockVector {
    type Output = FockVector;
    fn neg(self) -> FockVector {
        FockVector { terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect() }
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (idx, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}{idx:?}")?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct TermRepr<'a> {
    index: &'a FockIndex,
    coeff: String,
}

impl Serialize for FockVector {
    /// List of `{index, coeff}` in lexicographic index order.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (index, c) in &self.terms {
            seq.serialize_element(&TermRepr { index, coeff: c.to_string() })?;
        }
        seq.end()
    }
}
