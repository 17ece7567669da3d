//! Deterministic random stream.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;

/// Counter-based random stream: the same seed reproduces the exact same
/// output sequence. Each concurrent task must own its own stream; use
/// [`RngStream::derive`] to split one seed into decorrelated sub-streams.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    rng: ChaCha12Rng,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha12Rng::seed_from_u64(seed),
        }
    }

    /// Seed this stream was created from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Sub-stream for task `index`: seeded with `seed XOR index`, which is
    /// decorrelated by the underlying cipher. Index 0 reproduces the base
    /// stream from its initial state.
    pub fn derive(&self, index: u64) -> Self {
        Self::new(self.seed ^ index)
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.random()
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Raw 64 random bits (used for sign vectors).
    pub fn bits(&mut self) -> u64 {
        self.rng.random()
    }

    /// Uniform integer in `[0, bound)`.
    pub fn index(&mut self, bound: usize) -> usize {
        self.rng.random_range(0..bound)
    }

    /// Deterministic family of sub-streams for independent trials: draws a
    /// base value once, then `family(i)` seeds trial `i`. Results merged in
    /// trial order are identical no matter how trials are scheduled.
    pub fn trial_family(&mut self) -> impl Fn(u64) -> RngStream {
        let base = self.bits();
        move |i| RngStream::new(mix64(base ^ i))
    }
}

/// SplitMix64 finalizer; spreads consecutive integers into decorrelated seeds.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}
