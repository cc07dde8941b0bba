//! Planar diagram codes.
//!
//! A crossing lists four edge labels counterclockwise, starting with the
//! incoming under-strand, so the under-strand runs `arcs[0] -> arcs[2]`. For a
//! positive (right-handed) crossing the over-strand runs `arcs[3] -> arcs[1]`;
//! for a negative one it runs `arcs[1] -> arcs[3]`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub arcs: [u32; 4],
    pub sign: i8,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.arcs[0]
    }

    pub fn under_out(&self) -> u32 {
        self.arcs[2]
    }

    pub fn over_in(&self) -> u32 {
        if self.sign > 0 { self.arcs[3] } else { self.arcs[1] }
    }

    pub fn over_out(&self) -> u32 {
        if self.sign > 0 { self.arcs[1] } else { self.arcs[3] }
    }

    /// The same crossing with over and under exchanged.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        if self.sign > 0 {
            Crossing { arcs: [d, a, b, c], sign: -1 }
        } else {
            Crossing { arcs: [b, c, d, a], sign: 1 }
        }
    }

    /// The same crossing with both strands reversed.
    pub fn reversed(&self) -> Crossing {
        let [a, b, c, d] = self.arcs;
        Crossing { arcs: [c, d, a, b], sign: self.sign }
    }
}

/// Where an edge ends: the crossing index and whether it passes under there.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct EdgeEnd {
    pub crossing: usize,
    pub under: bool,
}

/// A validated planar diagram of an oriented link.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCode {
    components: Vec<Vec<u32>>,
    crossings: Vec<Crossing>,
}

/// On-disk layout `{m, components, crossings: [{arcs, sign}]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PdFile {
    pub m: usize,
    pub components: Vec<Vec<u32>>,
    pub crossings: Vec<Crossing>,
}

fn malformed<T>(crossing: Option<usize>, reason: impl Into<String>) -> Result<T> {
    Err(Error::MalformedPd { crossing, reason: reason.into() })
}

impl PdCode {
    pub fn new(components: Vec<Vec<u32>>, crossings: Vec<Crossing>) -> Result<Self> {
        let pd = PdCode { components, crossings };
        pd.validate()?;
        Ok(pd)
    }

    fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return malformed(None, "no components");
        }
        let mut owner = BTreeMap::new();
        for (c, comp) in self.components.iter().enumerate() {
            if comp.is_empty() {
                return malformed(None, format!("component {} has no edges", c + 1));
            }
            for &label in comp {
                if owner.insert(label, c).is_some() {
                    return malformed(None, format!("edge {label} is listed twice in the components"));
                }
            }
        }

        // label -> (crossing, strand is under) at each end
        let mut heads: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        let mut tails: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (k, x) in self.crossings.iter().enumerate() {
            if x.sign != 1 && x.sign != -1 {
                return malformed(Some(k), format!("sign must be 1 or -1, got {}", x.sign));
            }
            for label in x.arcs {
                if !owner.contains_key(&label) {
                    return malformed(Some(k), format!("edge {label} belongs to no component"));
                }
            }
            heads.entry(x.under_in()).or_default().push(k);
            heads.entry(x.over_in()).or_default().push(k);
            tails.entry(x.under_out()).or_default().push(k);
            tails.entry(x.over_out()).or_default().push(k);
        }

        for (c, comp) in self.components.iter().enumerate() {
            for (pos, &label) in comp.iter().enumerate() {
                let h = heads.get(&label).map_or(&[][..], Vec::as_slice);
                let t = tails.get(&label).map_or(&[][..], Vec::as_slice);
                match (h.len(), t.len()) {
                    (0, 0) if comp.len() == 1 => continue,
                    (0, 0) => {
                        return malformed(None, format!("edge {label} of component {} meets no crossing", c + 1))
                    }
                    (1, 1) => {}
                    _ => {
                        let at = h.first().or(t.first()).copied();
                        return malformed(
                            at,
                            format!("edge {label} must enter and leave exactly one crossing each"),
                        );
                    }
                }
                let k = h[0];
                let next = comp[(pos + 1) % comp.len()];
                if self.successor(k, label) != next {
                    return malformed(
                        Some(k),
                        format!(
                            "edge {label} continues as {} but component {} lists {next} next",
                            self.successor(k, label),
                            c + 1
                        ),
                    );
                }
            }
        }
        Ok(())
    }

    // outgoing label on the strand that enters crossing `k` along `label`
    fn successor(&self, k: usize, label: u32) -> u32 {
        let x = &self.crossings[k];
        if x.under_in() == label { x.under_out() } else { x.over_out() }
    }

    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<u32>] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    /// Component index (0-based) of every edge label.
    pub(crate) fn owners(&self) -> BTreeMap<u32, usize> {
        let mut out = BTreeMap::new();
        for (c, comp) in self.components.iter().enumerate() {
            for &label in comp {
                out.insert(label, c);
            }
        }
        out
    }

    /// The crossing at the head of each edge.
    pub(crate) fn edge_ends(&self) -> BTreeMap<u32, EdgeEnd> {
        let mut out = BTreeMap::new();
        for (k, x) in self.crossings.iter().enumerate() {
            out.insert(x.under_in(), EdgeEnd { crossing: k, under: true });
            out.insert(x.over_in(), EdgeEnd { crossing: k, under: false });
        }
        out
    }

    pub fn to_file(&self) -> PdFile {
        PdFile { m: self.m(), components: self.components.clone(), crossings: self.crossings.clone() }
    }

    pub fn from_file(file: PdFile) -> Result<Self> {
        if file.m != file.components.len() {
            return malformed(None, format!("m = {} but {} components are listed", file.m, file.components.len()));
        }
        Self::new(file.components, file.crossings)
    }

    /// Crossing change at every crossing.
    pub fn mirror(&self) -> PdCode {
        PdCode {
            components: self.components.clone(),
            crossings: self.crossings.iter().map(Crossing::mirrored).collect(),
        }
    }

    /// Every component with reversed orientation; each keeps its first edge.
    pub fn reverse(&self) -> PdCode {
        let components = self
            .components
            .iter()
            .map(|comp| {
                let mut rev = vec![comp[0]];
                rev.extend(comp[1..].iter().rev());
                rev
            })
            .collect();
        PdCode { components, crossings: self.crossings.iter().map(Crossing::reversed).collect() }
    }

    /// Mirror image with all orientations reversed.
    pub fn inverse_mirror(&self) -> PdCode {
        self.mirror().reverse()
    }

    /// Off-diagonal entries are linking numbers, diagonal entries self-writhes.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let m = self.m();
        let owners = self.owners();
        let mut raw = vec![vec![0i64; m]; m];
        for x in &self.crossings {
            let a = owners[&x.under_in()];
            let b = owners[&x.over_in()];
            raw[a][b] += x.sign as i64;
            if a != b {
                raw[b][a] += x.sign as i64;
            }
        }
        for (i, row) in raw.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                if i != j {
                    *v /= 2;
                }
            }
        }
        raw
    }

    /// Renumber edges `1..` in component traversal order.
    pub fn relabeled(&self) -> PdCode {
        let mut map = BTreeMap::new();
        for comp in &self.components {
            for &label in comp {
                let next = map.len() as u32 + 1;
                map.insert(label, next);
            }
        }
        PdCode {
            components: self.components.iter().map(|c| c.iter().map(|l| map[l]).collect()).collect(),
            crossings: self
                .crossings
                .iter()
                .map(|x| Crossing { arcs: x.arcs.map(|l| map[&l]), sign: x.sign })
                .collect(),
        }
    }
}

impl Serialize for PdCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_file().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PdCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PdCode::from_file(PdFile::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Closure of a braid on `strands` strands given as `(i, ±1)` for `σ_i^{±1}`
/// (1-based `i`). Strands run downward; `σ_i` is a positive crossing in which
/// the strand at position `i` passes under to position `i + 1`.
///
/// Components follow the cycles of the braid permutation, numbered by their
/// smallest top position, and each starts at its top edge.
pub fn braid_closure_pd(strands: usize, sigmas: &[(usize, i8)]) -> Result<PdCode> {
    if strands == 0 {
        return Err(Error::BraidParse("a braid needs at least one strand".into()));
    }
    let mut cur: Vec<u32> = (1..=strands as u32).collect();
    let mut next: BTreeMap<u32, u32> = BTreeMap::new();
    let mut fresh = strands as u32 + 1;
    let mut crossings = Vec::new();
    for &(i, eps) in sigmas {
        if i == 0 || i >= strands || (eps != 1 && eps != -1) {
            return Err(Error::BraidParse(format!("invalid letter s{i}^{eps} on {strands} strands")));
        }
        let (a, b) = (cur[i - 1], cur[i]);
        let (na, nb) = (fresh, fresh + 1);
        fresh += 2;
        next.insert(a, na);
        next.insert(b, nb);
        cur[i - 1] = nb;
        cur[i] = na;
        let arcs = if eps > 0 { [a, nb, na, b] } else { [b, a, nb, na] };
        crossings.push(Crossing { arcs, sign: eps });
    }

    let mut rename: BTreeMap<u32, u32> = BTreeMap::new();
    for (p, &label) in cur.iter().enumerate() {
        if label != p as u32 + 1 {
            rename.insert(label, p as u32 + 1);
        }
    }
    let r = |l: u32| rename.get(&l).copied().unwrap_or(l);
    for x in &mut crossings {
        x.arcs = x.arcs.map(r);
    }

    let mut seen = BTreeSet::new();
    let mut components = Vec::new();
    for start in 1..=strands as u32 {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = Vec::new();
        let mut label = start;
        loop {
            seen.insert(label);
            comp.push(label);
            label = match next.get(&label) {
                Some(&n) => r(n),
                None => label,
            };
            if label == start {
                break;
            }
        }
        components.push(comp);
    }
    Ok(PdCode::new(components, crossings)?.relabeled())
}
