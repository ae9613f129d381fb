//! Seeded, reproducible random streams.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent ChaCha stream for `(seed, purpose, index)`.
///
/// Every consumer of randomness takes its own stream, so adding draws in one
/// place never shifts the sequence seen by another.
pub fn stream(seed: u64, purpose: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ purpose.rotate_left(32));
    rng.set_stream(index.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ purpose);
    rng
}
