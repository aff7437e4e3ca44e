use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Seeded random stream. One per run; every stochastic operation takes it explicitly.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
    coin_bits: u64,
    coins_left: u32,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
            coin_bits: 0,
            coins_left: 0,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform real in `[0, 1)`.
    #[inline]
    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    /// Uniform real in `[low, high]`.
    #[inline]
    pub fn uniform_in(&mut self, low: f64, high: f64) -> f64 {
        (low + (high - low) * self.uniform()).min(high)
    }

    /// Uniform integer in `[0, n)`. Panics if `n == 0`.
    #[inline]
    pub fn below(&mut self, n: usize) -> usize {
        self.rng.random_range(0..n)
    }

    /// Fair coin flip, drawn from a buffered 64-bit word.
    #[inline]
    pub fn coin(&mut self) -> bool {
        if self.coins_left == 0 {
            self.coin_bits = self.rng.random::<u64>();
            self.coins_left = 64;
        }
        let bit = self.coin_bits & 1 == 1;
        self.coin_bits >>= 1;
        self.coins_left -= 1;
        bit
    }

    /// Number of failures before the first success of a Bernoulli(`p`)
    /// sequence, for `0 < p < 1`.
    #[inline]
    pub fn geometric(&mut self, p: f64) -> usize {
        let u = 1.0 - self.uniform();
        let k = (u.ln() / (-p).ln_1p()).floor();
        if k >= usize::MAX as f64 {
            usize::MAX
        } else {
            k as usize
        }
    }

    /// Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i + 1);
            items.swap(i, j);
        }
    }
}
