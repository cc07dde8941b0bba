//! Structural operations on longitude systems.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::mu::LongitudeSystem;
use crate::word::Word;

/// Componentwise product `w_i^a · w_i^b`.
pub fn connected_sum(a: &LongitudeSystem, b: &LongitudeSystem) -> Result<LongitudeSystem> {
    if a.m() != b.m() || a.depth() != b.depth() {
        return Err(Error::Incompatible(format!(
            "connected sum needs equal components and depth, got (m={}, depth={}) and (m={}, depth={})",
            a.m(),
            a.depth(),
            b.m(),
            b.depth()
        )));
    }
    let words = a.longitudes().iter().zip(b.longitudes()).map(|(u, v)| u * v).collect();
    LongitudeSystem::new(a.m(), a.depth(), words)
}

/// Mirror image with reversed orientation: every longitude is inverted.
pub fn inverse_mirror(a: &LongitudeSystem) -> LongitudeSystem {
    let words = a.longitudes().iter().map(Word::invert).collect();
    LongitudeSystem::new(a.m(), a.depth(), words).expect("inversion preserves framing and symmetry")
}

/// Old component `i` becomes component `perm[i]` (both 0-based).
pub fn reorder(a: &LongitudeSystem, perm: &[usize]) -> Result<LongitudeSystem> {
    let m = a.m();
    let distinct: BTreeSet<usize> = perm.iter().copied().collect();
    if perm.len() != m || distinct.len() != m || perm.iter().any(|&p| p >= m) {
        return Err(Error::InvalidPermutation(format!("{perm:?} is not a permutation of 0..{m}")));
    }
    let mut words = vec![Word::identity(); m];
    for (old, w) in a.longitudes().iter().enumerate() {
        words[perm[old]] = w.relabel(|g| perm[g as usize - 1] as u32 + 1);
    }
    LongitudeSystem::new(m, a.depth(), words)
}

/// Reverse the orientation of the listed components (0-based).
pub fn reorient(a: &LongitudeSystem, components: &BTreeSet<usize>) -> Result<LongitudeSystem> {
    if let Some(&c) = components.iter().find(|&&c| c >= a.m()) {
        return Err(Error::InvalidPermutation(format!("component {c} is out of range for m = {}", a.m())));
    }
    let flip = |g: u32| components.contains(&(g as usize - 1));
    let words = a
        .longitudes()
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let w = w.invert_generators(flip);
            if components.contains(&i) { w.invert() } else { w }
        })
        .collect();
    LongitudeSystem::new(a.m(), a.depth(), words)
}
