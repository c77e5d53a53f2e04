//! Reproducible random streams.
//!
//! Every stream is a `ChaCha8Rng` seeded from `(master_seed, trial, stream)`
//! through SplitMix64 mixing, so a trial's randomness does not depend on which
//! worker runs it or in what order.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Generator used for all sampling.
pub type TraceRng = ChaCha8Rng;

/// Stream index used to draw the transmitted codeword.
pub const CODEWORD_STREAM: u64 = 0;

/// Stream index of channel `c` (0-based).
pub const fn channel_stream(c: usize) -> u64 {
    1 + c as u64
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// 64-bit seed for one `(trial, stream)` pair.
pub fn derive_seed(master_seed: u64, trial: u64, stream: u64) -> u64 {
    master_seed ^ splitmix64(splitmix64(trial) ^ stream.wrapping_mul(0xD6E8_FEB8_6659_FD93))
}

/// Independent generator for one `(trial, stream)` pair.
pub fn stream_rng(master_seed: u64, trial: u64, stream: u64) -> TraceRng {
    TraceRng::seed_from_u64(derive_seed(master_seed, trial, stream))
}
