//! Seeded random streams.
//!
//! Every random quantity is drawn from its own ChaCha stream whose key is a
//! SHA-256 digest of (root seed, entity id, purpose, index). Results therefore
//! do not depend on the order in which entities or realizations are visited.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// What a stream is used for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Purpose {
    RayPlacement,
    RayPhases,
    ScatteringPhase,
}

impl Purpose {
    fn tag(self) -> &'static [u8] {
        match self {
            Purpose::RayPlacement => b"ray-placement",
            Purpose::RayPhases => b"ray-phases",
            Purpose::ScatteringPhase => b"scattering-phase",
        }
    }
}

/// Stream for `entity` under `purpose`, realization `index`.
pub fn stream(root_seed: u64, entity: &str, purpose: Purpose, index: u64) -> ChaCha8Rng {
    let mut h = Sha256::new();
    h.update(b"isac-channel/v1");
    h.update(root_seed.to_le_bytes());
    h.update((entity.len() as u64).to_le_bytes());
    h.update(entity.as_bytes());
    h.update(purpose.tag());
    h.update(index.to_le_bytes());
    let digest = h.finalize();
    let mut key = [0u8; 32];
    key.copy_from_slice(&digest);
    ChaCha8Rng::from_seed(key)
}
