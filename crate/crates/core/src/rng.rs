//! Seeded generators. Each consumer draws from its own ChaCha stream, so the
//! same integer seed used for data generation and for a starting point does
//! not produce correlated draws.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    StartingPoint,
    IndexOrder,
    Generator,
    LabelMask,
    Folds,
}

pub fn seeded(seed: u64, stream: Stream) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream as u64 + 1);
    rng
}
