//! Deterministic pseudo-random generation: SplitMix64 for seeding and
//! hashing, xoshiro256** for the sampling streams. Both are fixed published
//! algorithms implemented here so every platform draws bit-identical
//! streams from the same seed.

/// SplitMix64: a 64-bit state advanced by the golden-ratio increment, with
/// an avalanche finalizer. Used to expand seeds and to hash substream ids.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

const GOLDEN: u64 = 0x9E3779B97F4A7C15;

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }
}

/// The SplitMix64 finalizer applied to a value: one step of the generator
/// started just before `x`. A bijective avalanche mix with mix64(0) = 0.
pub fn mix64(x: u64) -> u64 {
    SplitMix64::new(x.wrapping_sub(GOLDEN)).next_u64()
}

/// xoshiro256**: 256-bit state, seeded from four SplitMix64 outputs.
#[derive(Debug, Clone)]
pub struct Xoshiro256StarStar {
    s: [u64; 4],
}

impl Xoshiro256StarStar {
    pub fn from_seed(seed: u64) -> Self {
        let mut sm = SplitMix64::new(seed);
        Xoshiro256StarStar {
            s: [sm.next_u64(), sm.next_u64(), sm.next_u64(), sm.next_u64()],
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let s = &mut self.s;
        let result = s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = s[1] << 17;
        s[2] ^= s[0];
        s[3] ^= s[1];
        s[1] ^= s[2];
        s[0] ^= s[3];
        s[2] ^= t;
        s[3] = s[3].rotate_left(45);
        result
    }

    /// A uniform f64 in [0, 1) with 53 random mantissa bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}
