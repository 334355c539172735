//! Deterministic random streams.
//!
//! Every randomized routine in the crate derives its own ChaCha8 stream
//! from a caller-supplied 64-bit seed, so results are reproducible across
//! platforms, runs, and thread counts. Parallel loops derive one stream
//! per work item with [`derive_seed`] and never share generator state.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The generator behind all randomness in the crate.
pub type Stream = ChaCha8Rng;

/// Create the stream for a seed.
pub fn stream(seed: u64) -> Stream {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive an independent stream seed from a base seed and an item index
/// (SplitMix64 finalizer over the combined value).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform index in `0..bound` via rejection sampling on 64-bit output.
pub fn uniform_index(rng: &mut Stream, bound: usize) -> usize {
    assert!(bound > 0, "uniform_index bound must be positive");
    let bound = bound as u64;
    let zone = (u64::MAX / bound) * bound;
    loop {
        let x = rng.next_u64();
        if x < zone {
            return (x % bound) as usize;
        }
    }
}

/// Uniform f64 in [0, 1) with 53 bits of precision.
pub fn uniform_f64(rng: &mut Stream) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// `n` uniformly random bits packed little-endian: bit `i` of the result
/// (word `i / 64`, position `i % 64`) is node `i`.
pub fn uniform_bits(rng: &mut Stream, n: usize) -> Vec<u64> {
    let words = n.div_ceil(64);
    let mut out = Vec::with_capacity(words);
    for w in 0..words {
        let mut word = rng.next_u64();
        let used = (n - w * 64).min(64);
        if used < 64 {
            word &= (1u64 << used) - 1;
        }
        out.push(word);
    }
    out
}

/// Read bit `i` from a packed bit vector.
#[inline]
pub fn packed_bit(words: &[u64], i: usize) -> u8 {
    ((words[i >> 6] >> (i & 63)) & 1) as u8
}
