//! Seeded pseudorandom stream shared by every stochastic routine.
//!
//! The generator is xoshiro256** whose 256-bit state is filled from the
//! 64-bit seed with SplitMix64 (the standard `seed_from_u64` expansion of
//! the `rand_xoshiro` crate). Reference stream, `next_u64` for seed 42:
//!
//! ```text
//!  1  1546998764402558742     6  14199186830065750584
//!  2  6990951692964543102     7  13267978908934200754
//!  3 12544586762248559009     8  15679888225317814407
//!  4 17057574109182124193     9  14044878350692344958
//!  5 18295552978065317476    10  10760895422300929085
//! ```
//!
//! Bounded integers use Lemire's multiply-shift with rejection:
//! draw `x`, form the 128-bit product `x * n`, reject while the low word is
//! below `2^64 mod n`, and return the high word. Independent trials are
//! seeded as `base_seed + trial`.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;

#[derive(Clone, Debug)]
pub struct Rng {
    seed: u64,
    inner: Xoshiro256StarStar,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            inner: Xoshiro256StarStar::seed_from_u64(seed),
        }
    }

    /// Seed of the stream for trial `trial` of an experiment with `base`.
    pub fn trial_seed(base: u64, trial: u64) -> u64 {
        base.wrapping_add(trial)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform integer in `0..n`. Panics when `n == 0`.
    #[inline]
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = (self.next_u64() as u128) * (n as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    #[inline]
    pub fn index(&mut self, len: usize) -> usize {
        self.below(len as u64) as usize
    }

    /// True with probability exactly `1/n`.
    #[inline]
    pub fn one_in(&mut self, n: u64) -> bool {
        self.below(n) == 0
    }

    /// Uniform integer in `lo..=hi`.
    pub fn range_inclusive(&mut self, lo: u64, hi: u64) -> u64 {
        assert!(lo <= hi);
        match (hi - lo).checked_add(1) {
            Some(span) => lo + self.below(span),
            None => self.next_u64(),
        }
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.index(i + 1);
            items.swap(i, j);
        }
    }
}
