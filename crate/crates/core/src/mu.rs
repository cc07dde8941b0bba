//! Milnor's invariants read off Magnus expansions of longitude words.
//!
//! For an index `I = i_1 ... i_k j`, `mu(I)` is the coefficient of
//! `X_{i_1} ... X_{i_k}` in the expansion of the `j`-th longitude, `delta(I)` is
//! the gcd of `mu(J)` over cyclic rotations `J` of proper subsequences of `I`,
//! and `mu_bar(I)` is the residue of `mu(I)` modulo `delta(I)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::magnus::{lcs_depth, magnus_expand, NCSeries};
use crate::word::Word;

/// A sequence of 1-based component indices of weight at least 2.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MuIndex(Vec<u32>);

impl MuIndex {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::IndexTooShort(entries.len()));
        }
        if entries.contains(&0) {
            return Err(Error::IndexParse(format!("{entries:?}")));
        }
        Ok(MuIndex(entries))
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn max_component(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Rotation `i_2 ... i_k i_1`.
    pub fn rotated(&self) -> MuIndex {
        let mut v = self.0.clone();
        v.rotate_left(1);
        MuIndex(v)
    }

    /// All indices of the given weight over components `1..=m`, in lexicographic order.
    pub fn all(m: usize, weight: usize) -> impl Iterator<Item = MuIndex> {
        let total = (m as u64).pow(weight as u32);
        (0..total).map(move |mut code| {
            let mut v = vec![0u32; weight];
            for slot in v.iter_mut().rev() {
                *slot = (code % m as u64) as u32 + 1;
                code /= m as u64;
            }
            MuIndex(v)
        })
    }

    fn check_components(&self, m: usize) -> Result<()> {
        match self.0.iter().find(|&&c| c as usize > m) {
            Some(&component) => Err(Error::ComponentOutOfRange { index: self.to_string(), component, m }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for MuIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&c| c <= 9) {
            for c in &self.0 {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
            f.write_str(&parts.join(","))
        }
    }
}

impl FromStr for MuIndex {
    type Err = Error;

    /// Digit strings such as `1122`, or comma-separated `1,2,12` for components above 9.
    fn from_str(s: &str) -> Result<MuIndex> {
        let s = s.trim();
        let bad = || Error::IndexParse(s.to_string());
        let entries: Vec<u32> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u32>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            s.chars().map(|c| c.to_digit(10).ok_or_else(bad)).collect::<Result<_>>()?
        };
        if entries.contains(&0) {
            return Err(bad());
        }
        MuIndex::new(entries)
    }
}

impl Serialize for MuIndex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `(mu, delta, residue)` for one index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MuValue {
    #[serde(with = "crate::json::bigint")]
    pub mu: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub delta: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub residue: BigInt,
}

impl MuValue {
    pub fn new(mu: BigInt, delta: BigInt) -> Self {
        let residue = reduce_mod(&mu, &delta);
        MuValue { mu, delta, residue }
    }

    pub fn vanishes(&self) -> bool {
        self.residue.is_zero()
    }
}

/// Residue in `[0, modulus)`, or the value itself when the modulus is 0.
pub fn reduce_mod(value: &BigInt, modulus: &BigInt) -> BigInt {
    if modulus.is_zero() {
        value.clone()
    } else {
        value.mod_floor(&modulus.abs())
    }
}

/// True when `a ≡ b (mod modulus)`, with modulus 0 meaning equality.
pub fn congruent(a: &BigInt, b: &BigInt, modulus: &BigInt) -> bool {
    reduce_mod(&(a - b), modulus).is_zero()
}

/// Longitude words of an `m`-component link, valid modulo the `depth`-th
/// lower central subgroup. Longitudes are 0-framed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongitudeSystem {
    m: usize,
    depth: usize,
    longitudes: Vec<Word>,
}

impl LongitudeSystem {
    pub fn new(m: usize, depth: usize, longitudes: Vec<Word>) -> Result<Self> {
        let invalid = |msg: String| Err(Error::InvalidLongitudes(msg));
        if m == 0 {
            return invalid("a link needs at least one component".into());
        }
        if depth < 2 {
            return invalid(format!("depth must be at least 2, got {depth}"));
        }
        if longitudes.len() != m {
            return invalid(format!("expected {m} longitudes, got {}", longitudes.len()));
        }
        for (i, w) in longitudes.iter().enumerate() {
            if w.max_generator() as usize > m {
                return invalid(format!("longitude {} uses x{}", i + 1, w.max_generator()));
            }
        }
        for i in 0..m {
            let own = longitudes[i].exponent_sum(i as u32 + 1);
            if own != 0 {
                return invalid(format!("longitude {} is not 0-framed (exponent sum of x{} is {own})", i + 1, i + 1));
            }
            for j in i + 1..m {
                let a = longitudes[i].exponent_sum(j as u32 + 1);
                let b = longitudes[j].exponent_sum(i as u32 + 1);
                if a != b {
                    return invalid(format!(
                        "linking numbers are not symmetric: components {} and {} give {a} and {b}",
                        i + 1,
                        j + 1
                    ));
                }
            }
        }
        Ok(LongitudeSystem { m, depth, longitudes })
    }

    /// The `m`-component unlink.
    pub fn trivial(m: usize, depth: usize) -> Self {
        Self::new(m, depth, vec![Word::identity(); m]).expect("trivial system is valid")
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn longitudes(&self) -> &[Word] {
        &self.longitudes
    }

    /// Longitude of component `i` (1-based).
    pub fn longitude(&self, i: usize) -> &Word {
        &self.longitudes[i - 1]
    }

    /// Linking number of components `i` and `j` (1-based).
    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        self.longitudes[j - 1].exponent_sum(i as u32)
    }

    /// The same words regarded as valid only modulo a shallower depth.
    pub fn with_depth(&self, depth: usize) -> Result<Self> {
        if depth > self.depth {
            return Err(Error::Incompatible(format!(
                "cannot deepen a depth-{} system to depth {depth}",
                self.depth
            )));
        }
        Self::new(self.m, depth, self.longitudes.clone())
    }

    pub fn to_file(&self) -> LongitudeSystemFile {
        LongitudeSystemFile {
            m: self.m,
            depth: self.depth,
            longitudes: self.longitudes.clone(),
            metadata: BTreeMap::new(),
        }
    }
}

/// JSON layout `{m, depth, longitudes: [word strings], metadata?}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LongitudeSystemFile {
    pub m: usize,
    pub depth: usize,
    pub longitudes: Vec<Word>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub metadata: BTreeMap<String, String>,
}

impl LongitudeSystemFile {
    pub fn into_system(self) -> Result<LongitudeSystem> {
        LongitudeSystem::new(self.m, self.depth, self.longitudes)
    }
}

/// Magnus expansions of all longitudes, computed once and queried many times.
#[derive(Debug, Clone)]
pub struct MilnorInvariants {
    m: usize,
    depth: usize,
    expansions: Vec<NCSeries>,
}

impl MilnorInvariants {
    pub fn new(system: &LongitudeSystem) -> Self {
        let expansions = system.longitudes.iter().map(|w| magnus_expand(w, system.depth)).collect();
        MilnorInvariants { m: system.m, depth: system.depth, expansions }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    fn check(&self, index: &MuIndex) -> Result<()> {
        index.check_components(self.m)?;
        if index.weight() + 1 > self.depth {
            return Err(Error::WeightExceedsDepth { weight: index.weight(), depth: self.depth });
        }
        Ok(())
    }

    // caller has checked the index
    fn raw_mu(&self, entries: &[u32]) -> BigInt {
        let (last, prefix) = entries.split_last().expect("nonempty index");
        self.expansions[*last as usize - 1]
            .coefficient(prefix)
            .expect("weight already checked against depth")
    }

    pub fn mu(&self, index: &MuIndex) -> Result<BigInt> {
        self.check(index)?;
        Ok(self.raw_mu(index.entries()))
    }

    pub fn delta(&self, index: &MuIndex) -> Result<BigInt> {
        self.check(index)?;
        let mut gcd = BigInt::zero();
        for j in proper_cyclic_subsequences(index.entries()) {
            gcd = gcd.gcd(&self.raw_mu(&j));
            if gcd == BigInt::from(1) {
                break;
            }
        }
        Ok(gcd)
    }

    pub fn mu_bar(&self, index: &MuIndex) -> Result<MuValue> {
        Ok(MuValue::new(self.mu(index)?, self.delta(index)?))
    }

    /// First index (by weight, then lexicographically) of weight `2..=q` whose
    /// residue does not vanish.
    pub fn first_nonvanishing(&self, q: usize) -> Result<Option<MuIndex>> {
        if q + 1 > self.depth {
            return Err(Error::WeightExceedsDepth { weight: q, depth: self.depth });
        }
        for weight in 2..=q {
            for index in MuIndex::all(self.m, weight) {
                if !self.mu_bar(&index)?.vanishes() {
                    return Ok(Some(index));
                }
            }
        }
        Ok(None)
    }

    pub fn all_vanish_up_to(&self, q: usize) -> Result<bool> {
        Ok(self.first_nonvanishing(q)?.is_none())
    }
}

/// Cyclic rotations of order-preserving subsequences of length `2..len`,
/// without duplicates.
pub fn proper_cyclic_subsequences(entries: &[u32]) -> BTreeSet<Vec<u32>> {
    let n = entries.len();
    let mut out = BTreeSet::new();
    if n < 3 {
        return out;
    }
    for mask in 1u64..(1u64 << n) - 1 {
        let size = mask.count_ones() as usize;
        if size < 2 {
            continue;
        }
        let sub: Vec<u32> = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| entries[i]).collect();
        for r in 0..size {
            let mut rot = sub.clone();
            rot.rotate_left(r);
            out.insert(rot);
        }
    }
    out
}

pub fn mu(system: &LongitudeSystem, index: &MuIndex) -> Result<BigInt> {
    MilnorInvariants::new(system).mu(index)
}

pub fn delta(system: &LongitudeSystem, index: &MuIndex) -> Result<BigInt> {
    MilnorInvariants::new(system).delta(index)
}

pub fn mu_bar(system: &LongitudeSystem, index: &MuIndex) -> Result<MuValue> {
    MilnorInvariants::new(system).mu_bar(index)
}

pub fn all_vanish_up_to(system: &LongitudeSystem, q: usize) -> Result<bool> {
    MilnorInvariants::new(system).all_vanish_up_to(q)
}

/// Smallest lower-central depth over all longitudes, capped at `q`.
pub fn min_longitude_lcs_depth(system: &LongitudeSystem, q: usize) -> usize {
    system.longitudes.iter().map(|w| lcs_depth(w, q)).min().unwrap_or(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn idx(s: &str) -> MuIndex {
        s.parse().unwrap()
    }

    fn hopf(depth: usize) -> LongitudeSystem {
        LongitudeSystem::new(2, depth, vec![w("x2"), w("x1")]).unwrap()
    }

    fn int(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn index_parsing() {
        assert_eq!(idx("1122").entries(), &[1, 1, 2, 2]);
        assert_eq!(idx("1,2,12").entries(), &[1, 2, 12]);
        assert_eq!(idx("1,2,12").to_string(), "1,2,12");
        assert_eq!(idx("123").to_string(), "123");
        assert!("1".parse::<MuIndex>().is_err());
        assert!("10".parse::<MuIndex>().is_err());
        assert!("1a".parse::<MuIndex>().is_err());
    }

    #[test]
    fn system_validation() {
        assert!(LongitudeSystem::new(2, 4, vec![w("x2 x1"), w("x1")]).is_err());
        assert!(LongitudeSystem::new(2, 4, vec![w("x2 x2"), w("x1")]).is_err());
        assert!(LongitudeSystem::new(2, 4, vec![w("x3"), w("e")]).is_err());
        assert!(LongitudeSystem::new(2, 1, vec![w("e"), w("e")]).is_err());
        assert!(LongitudeSystem::new(2, 4, vec![w("e")]).is_err());
        assert_eq!(hopf(4).linking_number(1, 2), 1);
    }

    #[test]
    fn hopf_values() {
        let inv = MilnorInvariants::new(&hopf(4));
        assert_eq!(inv.mu(&idx("12")).unwrap(), int(1));
        assert_eq!(inv.delta(&idx("12")).unwrap(), int(0));
        assert_eq!(inv.mu_bar(&idx("12")).unwrap(), MuValue::new(int(1), int(0)));
        assert!(!inv.all_vanish_up_to(2).unwrap());
        assert_eq!(inv.first_nonvanishing(3).unwrap(), Some(idx("12")));
    }

    #[test]
    fn weight_and_component_errors() {
        let inv = MilnorInvariants::new(&hopf(4));
        assert!(matches!(inv.mu(&idx("1212")), Err(Error::WeightExceedsDepth { .. })));
        assert!(matches!(inv.mu(&idx("123")), Err(Error::ComponentOutOfRange { component: 3, .. })));
        assert!(matches!(inv.all_vanish_up_to(4), Err(Error::WeightExceedsDepth { .. })));
    }

    #[test]
    fn repeated_single_index_vanishes() {
        let inv = MilnorInvariants::new(&hopf(6));
        for s in ["11", "22", "111", "2222", "11111"] {
            assert_eq!(inv.mu(&idx(s)).unwrap(), int(0), "{s}");
        }
    }

    #[test]
    fn residue_normalization() {
        let v = MuValue::new(int(5), int(3));
        assert_eq!(v.residue, int(2));
        let v = MuValue::new(int(-5), int(3));
        assert_eq!(v.residue, int(1));
        let v = MuValue::new(int(-5), int(0));
        assert_eq!(v.residue, int(-5));
    }

    #[test]
    fn borromean_commutator_system() {
        // w3 = [x1, x2]; the other two are the cyclically consistent conjugates
        let sys = LongitudeSystem::new(
            3,
            4,
            vec![
                Word::commutator(&w("x2"), &w("x3")),
                Word::commutator(&w("x3"), &w("x1")),
                Word::commutator(&w("x1"), &w("x2")),
            ],
        )
        .unwrap();
        let inv = MilnorInvariants::new(&sys);
        assert_eq!(inv.mu_bar(&idx("123")).unwrap(), MuValue::new(int(1), int(0)));
        assert_eq!(inv.delta(&idx("123")).unwrap(), int(0));
        assert!(inv.all_vanish_up_to(2).unwrap());
        assert!(!inv.all_vanish_up_to(3).unwrap());
        assert_eq!(inv.first_nonvanishing(3).unwrap(), Some(idx("123")));
    }

    #[test]
    fn trivial_system_vanishes() {
        let inv = MilnorInvariants::new(&LongitudeSystem::trivial(3, 6));
        for q in 2..=5 {
            assert!(inv.all_vanish_up_to(q).unwrap());
        }
    }

    #[test]
    fn delta_of_1122_with_linking_three() {
        let sys = LongitudeSystem::new(2, 5, vec![Word::power_of(2, 3), Word::power_of(1, 3)]).unwrap();
        assert_eq!(delta(&sys, &idx("1122")).unwrap(), int(3));
    }

    #[test]
    fn subsequence_set() {
        let s = proper_cyclic_subsequences(&[1, 2, 3]);
        let expected: BTreeSet<Vec<u32>> =
            [vec![1, 2], vec![2, 1], vec![1, 3], vec![3, 1], vec![2, 3], vec![3, 2]].into_iter().collect();
        assert_eq!(s, expected);
        assert!(proper_cyclic_subsequences(&[1, 2]).is_empty());
    }

    #[test]
    fn coset_representative_does_not_matter() {
        let base = LongitudeSystem::new(
            2,
            5,
            vec![Word::commutator(&w("x2"), &Word::commutator(&w("x1"), &w("x2"))), Word::identity()],
        );
        // second longitude must be symmetric in linking; both are zero here
        let base = base.unwrap();
        let deep = Word::left_normed(&[w("x1"), w("x2"), w("x2"), w("x1"), w("x2")]);
        assert!(lcs_depth(&deep, 6) >= 5);
        let shifted = LongitudeSystem::new(2, 5, vec![base.longitude(1) * &deep, deep.clone()]).unwrap();
        let a = MilnorInvariants::new(&base);
        let b = MilnorInvariants::new(&shifted);
        for weight in 2..=4 {
            for i in MuIndex::all(2, weight) {
                assert_eq!(a.mu(&i).unwrap(), b.mu(&i).unwrap(), "{i}");
            }
        }
    }

    #[test]
    fn vanishing_matches_longitude_depth() {
        let sys = LongitudeSystem::new(
            2,
            6,
            vec![Word::left_normed(&[w("x1"), w("x2"), w("x2")]), Word::left_normed(&[w("x1"), w("x2"), w("x1")])],
        )
        .unwrap();
        let inv = MilnorInvariants::new(&sys);
        for q in 2..=5 {
            assert_eq!(inv.all_vanish_up_to(q).unwrap(), min_longitude_lcs_depth(&sys, 6) >= q, "q = {q}");
        }
    }
}
