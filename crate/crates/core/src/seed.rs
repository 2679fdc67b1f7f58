//! Reproducible seeding with documented stream derivation.
//!
//! A [`Seed`] wraps a 64-bit master value. Child streams are derived with the
//! splitmix64 finalizer applied to `master + (index + 1) * 0x9E3779B97F4A7C15`,
//! so an identical `(master, index)` pair yields an identical stream on every
//! platform and under any parallel schedule. RNGs are ChaCha8 keyed by a
//! splitmix64 chain, which is stable across library versions.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// splitmix64 output finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A master seed plus the fixed stream-derivation rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Seed {
    master: u64,
}

impl Seed {
    pub fn new(master: u64) -> Self {
        Seed { master }
    }

    pub fn master(&self) -> u64 {
        self.master
    }

    /// Child seed for stream `index`. Distinct indices give distinct streams
    /// with overwhelming probability; identical inputs give identical streams.
    pub fn stream(&self, index: u64) -> Seed {
        Seed {
            master: splitmix64(
                self.master
                    .wrapping_add((index.wrapping_add(1)).wrapping_mul(GOLDEN_GAMMA)),
            ),
        }
    }

    /// Deterministic ChaCha8 RNG keyed by a splitmix64 chain over the master.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut state = self.master;
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            state = splitmix64(state);
            chunk.copy_from_slice(&state.to_le_bytes());
        }
        ChaCha8Rng::from_seed(key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn identical_inputs_identical_streams() {
        let a = Seed::new(7).stream(3);
        let b = Seed::new(7).stream(3);
        assert_eq!(a, b);
        let xs: Vec<u64> = (0..16).map(|_| a.rng().random::<u64>()).collect();
        let ys: Vec<u64> = (0..16).map(|_| b.rng().random::<u64>()).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn distinct_indices_distinct_streams() {
        let s = Seed::new(42);
        let derived: Vec<u64> = (0..1000).map(|i| s.stream(i).master()).collect();
        let mut dedup = derived.clone();
        dedup.sort_unstable();
        dedup.dedup();
        assert_eq!(dedup.len(), derived.len());
    }

    #[test]
    fn rng_sequences_differ_across_streams() {
        let s = Seed::new(0);
        let mut r0 = s.stream(0).rng();
        let mut r1 = s.stream(1).rng();
        let a: Vec<u64> = (0..8).map(|_| r0.random()).collect();
        let b: Vec<u64> = (0..8).map(|_| r1.random()).collect();
        assert_ne!(a, b);
    }
}
