//! Seeded generators of longitude systems that come from actual links.

#![allow(dead_code)]

use std::collections::BTreeMap;

use milnor::link::{artin_longitudes, ArtinLetter, PureBraidWord};
use milnor::mu::LongitudeSystem;
use milnor::word::Word;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_braid(rng: &mut ChaCha8Rng, strands: usize, letters: usize) -> PureBraidWord {
    let letters = (0..letters)
        .map(|_| {
            let i = rng.gen_range(1..strands);
            let j = rng.gen_range(i + 1..=strands);
            ArtinLetter { i, j, exponent: if rng.gen() { 1 } else { -1 } }
        })
        .collect();
    PureBraidWord::new(strands, letters).unwrap()
}

/// The sublink on components 1 and 2: deleting a strand kills its meridian.
pub fn first_two(sys: &LongitudeSystem) -> LongitudeSystem {
    let images: BTreeMap<u32, Word> = (1..=sys.m() as u32)
        .map(|g| (g, if g <= 2 { Word::generator(g) } else { Word::identity() }))
        .collect();
    let ws = (1..=2).map(|i| sys.longitude(i).substitute(&images).unwrap()).collect();
    LongitudeSystem::new(2, sys.depth(), ws).unwrap()
}

/// A 2-component sublink of the closure of a random pure braid on 3 or 4
/// strands.
pub fn random_two_component(rng: &mut ChaCha8Rng, depth: usize, max_letters: usize) -> LongitudeSystem {
    let strands = rng.gen_range(3..=4);
    let n = rng.gen_range(1..=max_letters);
    let braid = random_braid(rng, strands, n);
    first_two(&artin_longitudes(&braid, depth).unwrap())
}

/// Random realized system with linking number in `lk_range`.
pub fn random_with_linking(
    rng: &mut ChaCha8Rng,
    depth: usize,
    lk_range: std::ops::RangeInclusive<i64>,
) -> LongitudeSystem {
    loop {
        let sys = random_two_component(rng, depth, 6);
        if lk_range.contains(&sys.linking_number(1, 2)) {
            return sys;
        }
    }
}
