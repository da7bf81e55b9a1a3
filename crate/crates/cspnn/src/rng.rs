//! Pinned pseudo-random machinery for reproducible protocol runs.
//!
//! Every randomized choice in this crate (class-order permutations,
//! unlearning draws, synthetic fixtures) flows through this module so that
//! a seed fully determines a run, independent of platform or dependency
//! versions. The algorithms are fixed and will not change:
//!
//! - Seeding: SplitMix64 (Steele et al.), `z += 0x9E3779B97F4A7C15`, two
//!   xor-multiply mixes, expands one `u64` seed into the generator state.
//! - Generator: xoshiro256** (Blackman & Vigna), 256-bit state, output
//!   `rotl(s1 * 5, 7) * 9`.
//! - Bounded integers: Lemire's multiply-shift rejection method, unbiased.
//! - Shuffle: Fisher-Yates, iterating from the last index down.
//! - Sampling k of n without replacement: partial Fisher-Yates over the
//!   index vector, taking the first k slots in draw order.

/// SplitMix64; used to derive seeds and to expand them into xoshiro state.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256** seeded via SplitMix64.
#[derive(Debug, Clone)]
pub struct Xoshiro256 {
    s: [u64; 4],
}

impl Xoshiro256 {
    pub fn new(seed: u64) -> Self {
        let mut mix = SplitMix64::new(seed);
        Xoshiro256 {
            s: [
                mix.next_u64(),
                mix.next_u64(),
                mix.next_u64(),
                mix.next_u64(),
            ],
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Unbiased uniform index in `[0, bound)`.
    pub fn next_index(&mut self, bound: usize) -> usize {
        assert!(bound > 0, "bound must be positive");
        let bound = bound as u64;
        let threshold = bound.wrapping_neg() % bound;
        loop {
            let wide = u128::from(self.next_u64()) * u128::from(bound);
            if wide as u64 >= threshold {
                return (wide >> 64) as usize;
            }
        }
    }

    /// In-place Fisher-Yates shuffle.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.next_index(i + 1);
            items.swap(i, j);
        }
    }

    /// Draws `k` distinct indices from `0..n` in draw order.
    pub fn sample_indices(&mut self, n: usize, k: usize) -> Vec<usize> {
        assert!(k <= n, "cannot draw {k} from {n}");
        let mut indices: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = i + self.next_index(n - i);
            indices.swap(i, j);
        }
        indices.truncate(k);
        indices
    }
}
