//! Counter-based random numbers for reproducible initial data.
//!
//! A draw is a pure function of `(seed, stream, counter)`:
//!
//! ```text
//! key   = seed ^ (stream * 0xD1B54A32D192ED03)
//! z     = key + (counter + 1) * 0x9E3779B97F4A7C15      (wrapping u64)
//! z     = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//! z     = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! bits  = z ^ (z >> 31)
//! u     = (bits >> 11) * 2^-53                           in [0, 1)
//! ```
//!
//! This is the SplitMix64 finalizer applied to a Weyl sequence, so any
//! implementation with wrapping 64-bit arithmetic reproduces it bit for bit.

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;
const STREAM_MIX: u64 = 0xD1B5_4A32_D192_ED03;

#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CounterRng {
    key: u64,
}

impl CounterRng {
    pub fn new(seed: u64, stream: u64) -> Self {
        Self {
            key: seed ^ stream.wrapping_mul(STREAM_MIX),
        }
    }

    #[inline]
    pub fn bits(&self, counter: u64) -> u64 {
        mix64(self.key.wrapping_add(counter.wrapping_add(1).wrapping_mul(GOLDEN)))
    }

    /// Uniform in `[0, 1)`.
    #[inline]
    pub fn uniform(&self, counter: u64) -> f64 {
        (self.bits(counter) >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in `[-1, 1)`.
    #[inline]
    pub fn symmetric(&self, counter: u64) -> f64 {
        2.0 * self.uniform(counter) - 1.0
    }
}
