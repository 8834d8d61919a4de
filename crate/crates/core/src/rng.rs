//! Reproducible, splittable random streams.
//!
//! A stream is a ChaCha8 keystream keyed by `seed` and selected by
//! `stream_id`. ChaCha is counter based, so a stream is cut into disjoint
//! blocks by jumping the word position; Monte Carlo work is split into
//! fixed-size chunks that each own one block. Results therefore depend only on
//! `(seed, stream_id)` and never on the number of worker threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Words reserved per chunk block (2^40 32-bit words).
const BLOCK_SHIFT: u32 = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
    pub stream_id: u64,
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl RngSpec {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        RngSpec { seed, stream_id }
    }

    /// The generator at the start of this stream.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut r = ChaCha8Rng::seed_from_u64(self.seed);
        r.set_stream(self.stream_id);
        r
    }

    /// Generator for block `index` of this stream. Blocks never overlap.
    pub fn chunk_rng(&self, index: u64) -> ChaCha8Rng {
        assert!(index < (1 << 28), "chunk index out of range");
        let mut r = self.rng();
        r.set_word_pos(u128::from(index) << BLOCK_SHIFT);
        r
    }

    /// An independent child stream labelled `label`. Children of different
    /// parents or labels are keyed differently.
    pub fn derive(&self, label: u64) -> RngSpec {
        RngSpec {
            seed: splitmix64(self.seed ^ splitmix64(self.stream_id.wrapping_add(0xA5A5_5A5A))),
            stream_id: label,
        }
    }
}
