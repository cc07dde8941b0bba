//! Truncated noncommutative power series over the integers and the Magnus
//! embedding `x_i -> 1 + X_i`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::word::Word;

/// A monomial `X_{i_1} ... X_{i_k}`, stored as its 1-based index sequence.
///
/// Ordered by length first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
#[serde(transparent)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<&[u32]> for Monomial {
    fn from(v: &[u32]) -> Self {
        Monomial(v.to_vec())
    }
}

/// An integer noncommutative series with all terms of degree `>= degree_bound`
/// discarded. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NCSeries {
    degree_bound: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl NCSeries {
    pub fn zero(degree_bound: usize) -> Self {
        assert!(degree_bound >= 1, "degree bound must be positive");
        NCSeries { degree_bound, terms: BTreeMap::new() }
    }

    pub fn one(degree_bound: usize) -> Self {
        Self::from_terms(degree_bound, [(Monomial::unit(), BigInt::one())])
    }

    /// Builds a series from terms, dropping zeros and anything at or above the bound.
    pub fn from_terms<I>(degree_bound: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut s = Self::zero(degree_bound);
        for (m, c) in terms {
            if m.degree() < degree_bound {
                s.add_term(m, c);
            }
        }
        s
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Coefficient of `monomial`, or an error if the truncation cannot see it.
    pub fn coefficient(&self, monomial: &[u32]) -> Result<BigInt> {
        if monomial.len() >= self.degree_bound {
            return Err(Error::MonomialTooLong { len: monomial.len(), bound: self.degree_bound });
        }
        Ok(self.terms.get(&Monomial(monomial.to_vec())).cloned().unwrap_or_default())
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::unit()).cloned().unwrap_or_default()
    }

    /// Smallest degree of a nonzero nonconstant term, if any.
    pub fn min_nonconstant_degree(&self) -> Option<usize> {
        // BTreeMap order is by degree first
        self.terms.keys().map(Monomial::degree).find(|&d| d > 0)
    }

    pub fn mul(&self, other: &NCSeries) -> Result<NCSeries> {
        if self.degree_bound != other.degree_bound {
            return Err(Error::DegreeBoundMismatch(self.degree_bound, other.degree_bound));
        }
        let q = self.degree_bound;
        let mut out = NCSeries::zero(q);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() >= q {
                    // terms of `other` are sorted by degree
                    break;
                }
                let mut m = ma.0.clone();
                m.extend_from_slice(&mb.0);
                out.add_term(Monomial(m), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &NCSeries) -> Result<NCSeries> {
        if self.degree_bound != other.degree_bound {
            return Err(Error::DegreeBoundMismatch(self.degree_bound, other.degree_bound));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> NCSeries {
        NCSeries {
            degree_bound: self.degree_bound,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Serializable view: terms in canonical monomial order.
    pub fn to_terms(&self) -> Vec<SeriesTerm> {
        self.terms
            .iter()
            .map(|(m, c)| SeriesTerm { monomial: m.0.clone(), coeff: crate::json::big_to_json(c) })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesTerm {
    pub monomial: Vec<u32>,
    pub coeff: serde_json::Value,
}

impl fmt::Display for NCSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 + O({})", self.degree_bound);
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                for idx in &m.0 {
                    write!(f, "X{idx}")?;
                }
            }
        }
        write!(f, " + O({})", self.degree_bound)
    }
}

/// Dense accumulator used by the expansion kernel; `i128` is tried first and the
/// computation is redone with `BigInt` on overflow.
trait Coeff: Clone {
    fn c_zero() -> Self;
    fn c_one() -> Self;
    fn c_is_zero(&self) -> bool;
    /// `self += sign * other`; `None` on overflow.
    fn add_signed(&mut self, other: &Self, negative: bool) -> Option<()>;
    fn into_big(self) -> BigInt;
}

impl Coeff for i128 {
    fn c_zero() -> Self {
        0
    }
    fn c_one() -> Self {
        1
    }
    fn c_is_zero(&self) -> bool {
        *self == 0
    }
    fn add_signed(&mut self, other: &Self, negative: bool) -> Option<()> {
        *self = if negative { self.checked_sub(*other)? } else { self.checked_add(*other)? };
        Some(())
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Coeff for BigInt {
    fn c_zero() -> Self {
        Zero::zero()
    }
    fn c_one() -> Self {
        One::one()
    }
    fn c_is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_signed(&mut self, other: &Self, negative: bool) -> Option<()> {
        if negative {
            *self -= other;
        } else {
            *self += other;
        }
        Some(())
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Dense layout of all monomials of length `< q` over `g` generators.
struct DenseLayout {
    generators: usize,
    offsets: Vec<usize>,
}

impl DenseLayout {
    fn new(generators: usize, q: usize) -> Self {
        let mut offsets = Vec::with_capacity(q + 1);
        let mut total = 0usize;
        let mut block = 1usize;
        for _ in 0..=q {
            offsets.push(total);
            total = total.checked_add(block).expect("series too large");
            block = block.checked_mul(generators).expect("series too large");
        }
        DenseLayout { generators, offsets }
    }

    fn size(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    fn block(&self, len: usize) -> std::ops::Range<usize> {
        self.offsets[len]..self.offsets[len + 1]
    }

    fn decode(&self, len: usize, mut local: usize) -> Vec<u32> {
        let mut out = vec![0u32; len];
        for slot in out.iter_mut().rev() {
            *slot = (local % self.generators) as u32 + 1;
            local /= self.generators;
        }
        out
    }
}

fn expand_dense<C: Coeff>(word: &Word, q: usize, layout: &DenseLayout) -> Option<Vec<C>> {
    let g = layout.generators;
    let mut s = vec![C::c_zero(); layout.size()];
    s[0] = C::c_one();
    for letter in word.letters() {
        let digit = (letter.generator - 1) as usize;
        for len in (0..q - 1).rev() {
            let src = layout.block(len);
            for local in 0..src.len() {
                let value = s[src.start + local].clone();
                if value.c_is_zero() {
                    continue;
                }
                if letter.inverse {
                    // times 1 - X + X^2 - ...
                    let mut target = local;
                    for r in 1..q - len {
                        target = target * g + digit;
                        let idx = layout.offsets[len + r] + target;
                        s[idx].add_signed(&value, r % 2 == 1)?;
                    }
                } else {
                    let idx = layout.offsets[len + 1] + local * g + digit;
                    s[idx].add_signed(&value, false)?;
                }
            }
        }
    }
    Some(s)
}

/// Magnus expansion of `word`, truncated below degree `q`.
pub fn magnus_expand(word: &Word, q: usize) -> NCSeries {
    assert!(q >= 1, "degree bound must be positive");
    let generators = word.max_generator().max(1) as usize;
    let layout = DenseLayout::new(generators, q);
    let dense: Vec<BigInt> = match expand_dense::<i128>(word, q, &layout) {
        Some(v) => v.into_iter().map(Coeff::into_big).collect(),
        None => expand_dense::<BigInt>(word, q, &layout).expect("bigint expansion cannot overflow"),
    };
    let mut series = NCSeries::zero(q);
    for len in 0..q {
        let block = layout.block(len);
        for (local, c) in dense[block].iter().enumerate() {
            if !c.c_is_zero() {
                series.terms.insert(Monomial(layout.decode(len, local)), c.clone());
            }
        }
    }
    series
}

/// Largest `d <= q` such that the word's Magnus expansion has no nonconstant
/// term below degree `d` (so the word lies in the `d`-th lower central subgroup).
pub fn lcs_depth(word: &Word, q: usize) -> usize {
    magnus_expand(word, q).min_nonconstant_degree().map_or(q, |d| d.min(q))
}
