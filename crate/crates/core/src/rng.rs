//! Seeded random streams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type RunRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> RunRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A child stream whose seed is drawn from `parent`, so that sibling
/// computations consume a fixed amount of the parent stream regardless of
/// how much randomness they use themselves.
pub fn split<R: Rng + ?Sized>(parent: &mut R) -> RunRng {
    ChaCha8Rng::seed_from_u64(parent.random())
}
