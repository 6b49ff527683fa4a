//! Seeded, portable random streams.
//!
//! Every random draw in the crate goes through a ChaCha8 generator. Independent
//! substreams share a key derived from the seed and differ in the ChaCha stream
//! id, so work split across threads draws the same numbers regardless of
//! scheduling.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type StreamRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> StreamRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Substream `stream` of the generator keyed by `seed`.
pub fn substream(seed: u64, stream: u64) -> StreamRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
