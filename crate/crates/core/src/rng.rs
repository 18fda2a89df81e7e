//! Deterministic random streams.
//!
//! Every trial of every check draws from its own ChaCha stream keyed by
//! `(seed, stream)`, so results do not depend on evaluation order or on how
//! trials are split across threads.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}
