//! IO companion for `baxter-core`: JSONL and CSV codecs for the discrete
//! families, deterministic seeded RNG streams, parallel Monte-Carlo driving,
//! and the statistics helpers used by the verification suites.

pub mod io;
pub mod runner;
pub mod stats;

use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

/// The RNG behind every sampler in the lab: one 64-bit seed, one stream per
/// independent task, so results do not depend on scheduling.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
