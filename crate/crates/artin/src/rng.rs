//! Minimal deterministic PRNG.
//!
//! Reports must be byte-identical across runs and platforms for a fixed
//! seed, so randomized searches use this fixed SplitMix64 stream rather than
//! an external generator whose output could drift between versions.

#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Derives an independent deterministic stream for a labelled subtask.
    pub fn derive(seed: u64, label: u64) -> Self {
        let mut base = SplitMix64::new(seed ^ label.wrapping_mul(0x9E3779B97F4A7C15));
        base.next_u64();
        base
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough value in `0..n` (n > 0). The modulo bias is irrelevant
    /// for coefficient sampling and keeps the stream layout trivial.
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    /// Integer in `[-height, height]`.
    pub fn signed_height(&mut self, height: u64) -> i64 {
        self.below(2 * height + 1) as i64 - height as i64
    }
}
