//! Child seeds for (algorithm, repetition) runs.
//!
//! The child seed is the first eight bytes, read little-endian, of
//!
//! ```text
//! SHA-256( "fbandit/child-seed/v1" || master_seed as u64 LE || algo name || 0x00 || rep as u64 LE )
//! ```
//!
//! Keying by the algorithm's name keeps every curve unchanged when the
//! algorithm list is reordered. The learner is seeded with the child seed;
//! the environment draws from stream [`ENV_STREAM`] of a `ChaCha8Rng` seeded
//! with the same value, which no learner uses.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

pub const ENV_STREAM: u64 = u64::MAX;

const DOMAIN: &[u8] = b"fbandit/child-seed/v1";

pub fn child_seed(master: u64, algo: &str, rep: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(DOMAIN);
    hasher.update(master.to_le_bytes());
    hasher.update(algo.as_bytes());
    hasher.update([0u8]);
    hasher.update(rep.to_le_bytes());
    let digest = hasher.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}

pub fn env_rng(child: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(child);
    rng.set_stream(ENV_STREAM);
    rng
}
