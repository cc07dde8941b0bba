//! Wirtinger presentations and longitudes of PD codes.

use crate::error::{Error, Result};
use crate::link::pd::PdCode;
use crate::mu::LongitudeSystem;
use crate::word::Word;

/// A maximal run of edges between two under-passages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arc {
    /// 0-based component index.
    pub component: usize,
    pub edges: Vec<u32>,
}

/// `outgoing = over^{-sign} · incoming · over^{sign}`, arcs by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CrossingRelation {
    pub crossing: usize,
    pub incoming: usize,
    pub outgoing: usize,
    pub over: usize,
    pub sign: i8,
}

/// Under-passage met while walking a component from its first edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Passage {
    over: usize,
    sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WirtingerPresentation {
    pub arcs: Vec<Arc>,
    pub relations: Vec<CrossingRelation>,
    /// Arc carrying the meridian `x_{c+1}` of each component.
    pub base_arcs: Vec<usize>,
    passages: Vec<Vec<Passage>>,
}

impl WirtingerPresentation {
    /// Relator `outgoing^{-1} over^{-sign} incoming over^{sign}` with arc `k` as generator `k + 1`.
    pub fn relator(&self, r: &CrossingRelation) -> Word {
        let g = |arc: usize| Word::generator(arc as u32 + 1);
        let u = g(r.over).pow(r.sign as i64);
        g(r.outgoing).invert() * u.invert() * g(r.incoming) * u
    }
}

pub fn wirtinger(pd: &PdCode) -> WirtingerPresentation {
    let ends = pd.edge_ends();
    let mut edge_arc = std::collections::BTreeMap::new();
    let mut arcs = Vec::new();
    let mut base_arcs = Vec::new();
    for (c, comp) in pd.components().iter().enumerate() {
        let unders = comp.iter().filter(|l| ends.get(l).is_some_and(|e| e.under)).count();
        let count = unders.max(1);
        let offset = arcs.len();
        base_arcs.push(offset);
        for _ in 0..count {
            arcs.push(Arc { component: c, edges: Vec::new() });
        }
        let mut local = 0;
        for label in comp {
            let id = offset + local % count;
            arcs[id].edges.push(*label);
            edge_arc.insert(*label, id);
            if ends.get(label).is_some_and(|e| e.under) {
                local += 1;
            }
        }
    }

    let relations = pd
        .crossings()
        .iter()
        .enumerate()
        .map(|(k, x)| CrossingRelation {
            crossing: k,
            incoming: edge_arc[&x.under_in()],
            outgoing: edge_arc[&x.under_out()],
            over: edge_arc[&x.over_in()],
            sign: x.sign,
        })
        .collect::<Vec<_>>();

    let passages = pd
        .components()
        .iter()
        .map(|comp| {
            comp.iter()
                .filter_map(|l| ends.get(l).filter(|e| e.under))
                .map(|e| {
                    let rel = &relations[e.crossing];
                    Passage { over: rel.over, sign: rel.sign }
                })
                .collect()
        })
        .collect();

    WirtingerPresentation { arcs, relations, base_arcs, passages }
}

/// Longitudes valid modulo `F_q`, by `q` rounds of rewriting every arc as a
/// conjugate of its component's base meridian.
pub fn longitudes_mod_q(pd: &PdCode, q: usize) -> Result<LongitudeSystem> {
    if q < 2 {
        return Err(Error::DegreeBoundTooSmall(q));
    }
    let pres = wirtinger(pd);
    let meridian = |arc: usize| Word::generator(pres.arcs[arc].component as u32 + 1);
    let mut expr: Vec<Word> = (0..pres.arcs.len()).map(meridian).collect();

    // prefix products of signed over-arc expressions along component `c`
    let conjugators = |expr: &[Word], c: usize| -> Vec<Word> {
        let mut prefix = Word::identity();
        let mut out = vec![prefix.clone()];
        for p in &pres.passages[c] {
            prefix = prefix * expr[p.over].pow(p.sign as i64);
            out.push(prefix.clone());
        }
        out
    };

    for _ in 0..q {
        let mut next = expr.clone();
        for c in 0..pd.m() {
            let prefixes = conjugators(&expr, c);
            let base = pres.base_arcs[c];
            let x = meridian(base);
            for (k, p) in prefixes.iter().enumerate().take(pres.passages[c].len()) {
                next[base + k] = p.invert() * &x * p;
            }
        }
        expr = next;
    }

    let mut longitudes = Vec::with_capacity(pd.m());
    for c in 0..pd.m() {
        let lambda = conjugators(&expr, c).pop().unwrap();
        let writhe: i64 = pres.passages[c]
            .iter()
            .filter(|p| pres.arcs[p.over].component == c)
            .map(|p| p.sign as i64)
            .sum();
        longitudes.push(lambda * Word::power_of(c as u32 + 1, -writhe));
    }
    LongitudeSystem::new(pd.m(), q, longitudes)
}

/// Linking matrix of a PD code; see [`PdCode::linking_matrix`].
pub fn linking_matrix(pd: &PdCode) -> Vec<Vec<i64>> {
    pd.linking_matrix()
}
