//! Labeled seed derivation.
//!
//! Every random stream in the crate is keyed by a master seed plus a labeled
//! path such as `["graph", 17]` or `["censor", "icm", 0.3, 17]`. The mix is
//! SHA-256 over a tagged, length-prefixed encoding, so the result is stable
//! across runs, platforms and thread schedules.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Deterministic generator used for all simulation randomness.
pub type SimRng = ChaCha8Rng;

/// One element of a seed path.
#[derive(Debug, Clone, PartialEq)]
pub enum SeedLabel {
    Str(String),
    Int(u64),
    Real(f64),
}

impl From<&str> for SeedLabel {
    fn from(s: &str) -> Self {
        SeedLabel::Str(s.to_owned())
    }
}

impl From<String> for SeedLabel {
    fn from(s: String) -> Self {
        SeedLabel::Str(s)
    }
}

impl From<u64> for SeedLabel {
    fn from(v: u64) -> Self {
        SeedLabel::Int(v)
    }
}

impl From<usize> for SeedLabel {
    fn from(v: usize) -> Self {
        SeedLabel::Int(v as u64)
    }
}

impl From<u32> for SeedLabel {
    fn from(v: u32) -> Self {
        SeedLabel::Int(u64::from(v))
    }
}

impl From<f64> for SeedLabel {
    fn from(v: f64) -> Self {
        SeedLabel::Real(v)
    }
}

/// Mixes `master` with a labeled path into a new 64-bit seed.
pub fn derive_seed(master: u64, labels: &[SeedLabel]) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(b"censor-detect/seed/v1");
    hasher.update(master.to_le_bytes());
    hasher.update((labels.len() as u64).to_le_bytes());
    for label in labels {
        match label {
            SeedLabel::Str(s) => {
                hasher.update([0u8]);
                hasher.update((s.len() as u64).to_le_bytes());
                hasher.update(s.as_bytes());
            }
            SeedLabel::Int(v) => {
                hasher.update([1u8]);
                hasher.update(v.to_le_bytes());
            }
            SeedLabel::Real(v) => {
                // -0.0 and 0.0 name the same cell
                let v = if *v == 0.0 { 0.0f64 } else { *v };
                hasher.update([2u8]);
                hasher.update(v.to_bits().to_le_bytes());
            }
        }
    }
    let digest = hasher.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}

/// Builds a labeled seed path from heterogeneous values.
///
/// ```
/// use censor_detect::seed_path;
/// let path = seed_path!["censor", "icm", 0.3, 17usize];
/// assert_eq!(path.len(), 4);
/// ```
#[macro_export]
macro_rules! seed_path {
    ($($label:expr),* $(,)?) => {
        vec![$($crate::seed::SeedLabel::from($label)),*]
    };
}

/// Generator seeded from `derive_seed(master, labels)`.
pub fn rng_for(master: u64, labels: &[SeedLabel]) -> SimRng {
    SimRng::seed_from_u64(derive_seed(master, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn same_inputs_same_seed() {
        let a = derive_seed(42, &seed_path!["graph", 3usize]);
        let b = derive_seed(42, &seed_path!["graph", 3usize]);
        assert_eq!(a, b);
    }

    #[test]
    fn regression_vector() {
        // Locked on first computation; any change breaks reproducibility of
        // every stored experiment.
        assert_eq!(derive_seed(0, &seed_path!["graph", 0usize]), 0xaf9e_20a0_1a93_a6a9);
    }

    #[test]
    fn one_label_changes_output() {
        let base = derive_seed(7, &seed_path!["censor", "icm", 0.3, 17usize]);
        assert_ne!(base, derive_seed(7, &seed_path!["censor", "uniform", 0.3, 17usize]));
        assert_ne!(base, derive_seed(7, &seed_path!["censor", "icm", 0.4, 17usize]));
        assert_ne!(base, derive_seed(7, &seed_path!["censor", "icm", 0.3, 18usize]));
        assert_ne!(base, derive_seed(8, &seed_path!["censor", "icm", 0.3, 17usize]));
        // type tags keep "1" and 1 apart
        assert_ne!(derive_seed(0, &seed_path!["1"]), derive_seed(0, &seed_path![1usize]));
        // length prefixes keep ["ab"] and ["a","b"] apart
        assert_ne!(derive_seed(0, &seed_path!["ab"]), derive_seed(0, &seed_path!["a", "b"]));
    }

    #[test]
    fn no_collisions_over_a_million_paths() {
        let mut seen = HashSet::with_capacity(1 << 21);
        let strategies = ["uniform", "icm"];
        let mut count = 0usize;
        for graph in 0..50_000usize {
            for strategy in strategies {
                for gamma in [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0] {
                    let labels = seed_path!["censor", strategy, gamma, graph];
                    assert!(seen.insert(derive_seed(0, &labels)));
                    count += 1;
                }
            }
        }
        assert_eq!(count, 1_000_000);
    }
}
