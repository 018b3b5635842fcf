//! Seeded generation of test subgroups and finite covers.
//!
//! All randomness flows through [`SeededRng`] (ChaCha8), whose output stream
//! is fixed across platforms, so a seed fully determines every corpus.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use super::{BasedCoreGraph, CoreGraph, LabeledGraph};
use crate::error::{Error, Result};
use crate::word::{Alphabet, Letter, Word};

pub type SeededRng = rand_chacha::ChaCha8Rng;

const MAX_ATTEMPTS: usize = 1000;

pub fn seeded(seed: u64) -> SeededRng {
    SeededRng::seed_from_u64(seed)
}

/// Uniform reduced word of exactly `len` letters.
pub fn random_word<R: Rng>(rng: &mut R, alphabet: Alphabet, len: usize) -> Word {
    let d = alphabet.directions();
    let mut w = Word::identity(alphabet);
    let mut prev: Option<Letter> = None;
    for _ in 0..len {
        let l = loop {
            let l = Letter::from_code(rng.gen_range(0..d));
            if prev != Some(l.inverse()) {
                break l;
            }
        };
        w.push(l);
        prev = Some(l);
    }
    w
}

/// Between 1 and `max_gens` generators of length 1..=`max_len`; retries
/// draws that span the trivial subgroup.
pub fn random_subgroup<R: Rng>(
    rng: &mut R,
    alphabet: Alphabet,
    max_gens: usize,
    max_len: usize,
) -> Result<BasedCoreGraph> {
    assert!(max_gens >= 1 && max_len >= 1, "bounds must be positive");
    for _ in 0..MAX_ATTEMPTS {
        let count = rng.gen_range(1..=max_gens);
        let gens: Vec<Word> = (0..count)
            .map(|_| {
                let len = rng.gen_range(1..=max_len);
                random_word(rng, alphabet, len)
            })
            .collect();
        match BasedCoreGraph::from_generators(alphabet, &gens) {
            Ok(h) => return Ok(h),
            Err(Error::TrivialSubgroup) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::RetryLimit(MAX_ATTEMPTS))
}

/// A connected degree-`d` cover of `g`: sheets `0..d` over every vertex, and
/// over every edge a uniformly random permutation of the sheets. The
/// basepoint is sheet 0 over vertex 0, so the result has index `d` in
/// `g.based_at(0)`.
pub fn random_finite_index_cover<R: Rng>(g: &CoreGraph, d: usize, rng: &mut R) -> Result<BasedCoreGraph> {
    assert!(d >= 1, "degree must be positive");
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = g.num_vertices();
    for _ in 0..MAX_ATTEMPTS {
        let mut cover = LabeledGraph::new(g.alphabet(), n * d);
        for e in g.graph().edges() {
            let mut perm: Vec<usize> = (0..d).collect();
            perm.shuffle(rng);
            for (sheet, &target) in perm.iter().enumerate() {
                cover.add_edge(e.origin * d + sheet, e.terminus * d + target, e.label);
            }
        }
        if cover.is_connected() {
            return cover.with_basepoint(0).core_based();
        }
    }
    Err(Error::RetryLimit(MAX_ATTEMPTS))
}
