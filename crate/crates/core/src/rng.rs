//! Seeded, reproducible randomness for measurement sampling.
//!
//! The generator is ChaCha with 8 rounds (`rand_chacha::ChaCha8Rng`) keyed
//! through `SeedableRng::seed_from_u64`. ChaCha is a counter-mode stream
//! cipher, so a stream is fully determined by `(seed, word position)` and is
//! identical on every platform. The identifier below is frozen: changing the
//! algorithm means changing the identifier.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Frozen name of the sampling algorithm.
pub const RNG_ALGORITHM: &str = "chacha8-seed_from_u64-v1";

/// Seeded generator. Not meant to be shared between threads.
#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    inner: ChaCha8Rng,
}

impl Rng {
    pub fn seeded(seed: u64) -> Self {
        Self {
            seed,
            inner: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Number of 32-bit words consumed so far.
    pub fn position(&self) -> u128 {
        self.inner.get_word_pos()
    }

    /// Uniform sample in `[0, 1)` built from the top 53 bits of one `u64`.
    pub fn next_unit(&mut self) -> f64 {
        (self.inner.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Fair coin.
    pub fn next_bit(&mut self) -> bool {
        self.inner.next_u64() >> 63 == 1
    }
}

impl RngCore for Rng {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}
