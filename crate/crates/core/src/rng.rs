use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

/// Seeded random stream shared by every level of one search.
///
/// Backed by ChaCha8, whose output is identical on every platform for a given
/// seed.
#[derive(Debug, Clone)]
pub struct SearchRng(ChaCha8Rng);

impl SearchRng {
    pub fn new(seed: u64) -> Self {
        SearchRng(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform draw in `[0, 1)` with 53 bits of precision.
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }
}
