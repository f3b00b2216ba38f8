//! Shared fixtures for the criterion benches.

use sigrefine::corpus::{corpus, CorpusShape};
use sigrefine::SignalingGame;

/// A fixed batch of random games so every bench run sees the same inputs.
pub fn bench_corpus(count: usize) -> Vec<SignalingGame> {
    corpus(0xbe4c, count, CorpusShape::default())
}
