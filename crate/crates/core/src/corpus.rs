//! Seeded random monomial ideals for differential testing.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::monomial::{Monomial, MonomialIdeal, RingContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusParams {
    pub max_vars: usize,
    pub max_gens: usize,
    pub max_exp: u32,
}

impl Default for CorpusParams {
    fn default() -> Self {
        Self {
            max_vars: 4,
            max_gens: 8,
            max_exp: 6,
        }
    }
}

/// One random proper ideal. Exponent vectors that are all zero are redrawn.
pub fn random_ideal<R: Rng>(rng: &mut R, params: CorpusParams) -> MonomialIdeal {
    let n = rng.gen_range(1..=params.max_vars.max(1));
    let m = rng.gen_range(1..=params.max_gens.max(1));
    let ring = Arc::new(RingContext::numbered(n).expect("n >= 1"));
    let mut gens = Vec::with_capacity(m);
    while gens.len() < m {
        let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=params.max_exp)).collect();
        if e.iter().any(|&x| x > 0) {
            gens.push(Monomial::new(e));
        }
    }
    MonomialIdeal::new(ring, gens).expect("nonzero exponents give a proper ideal")
}

/// `count` ideals from a ChaCha stream seeded with `seed`.
pub fn random_corpus(count: usize, seed: u64, params: CorpusParams) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_ideal(&mut rng, params)).collect()
}
