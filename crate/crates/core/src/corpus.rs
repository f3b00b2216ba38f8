//! Seeded random games for property checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::game::SignalingGame;
use crate::rational::{q, qf, Q};

/// Size bounds for [`random_game`].
#[derive(Debug, Clone, Copy)]
pub struct CorpusShape {
    pub max_types: usize,
    pub max_signals: usize,
    pub max_actions: usize,
    pub payoff_bound: i64,
}

impl Default for CorpusShape {
    fn default() -> Self {
        CorpusShape { max_types: 3, max_signals: 3, max_actions: 4, payoff_bound: 9 }
    }
}

/// A game with 2..=max sizes, integer payoffs in `[-bound, bound]` and a
/// random strictly positive prior with small denominators.
pub fn random_game(rng: &mut impl Rng, shape: CorpusShape) -> SignalingGame {
    let nt = rng.random_range(2..=shape.max_types.max(2));
    let ns = rng.random_range(2..=shape.max_signals.max(2));
    let na = rng.random_range(2..=shape.max_actions.max(2));
    let weights: Vec<i64> = (0..nt).map(|_| rng.random_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    let prior: Vec<Q> = weights.iter().map(|&w| qf(w, total)).collect();
    let b = shape.payoff_bound;
    let mut table = || -> Vec<Vec<Vec<Q>>> {
        (0..nt).map(|_| (0..ns).map(|_| (0..na).map(|_| q(rng.random_range(-b..=b))).collect()).collect()).collect()
    };
    let u1 = table();
    let u2 = table();
    let names = |p: &str, n: usize| (1..=n).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    SignalingGame::new(names("t", nt), names("s", ns), names("a", na), prior, u1, u2).expect("random game is valid")
}

/// `count` games from one seed.
pub fn corpus(seed: u64, count: usize, shape: CorpusShape) -> Vec<SignalingGame> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_game(&mut rng, shape)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_bounds() {
        let a = corpus(7, 5, CorpusShape::default());
        let b = corpus(7, 5, CorpusShape::default());
        assert_eq!(a, b);
        for g in &a {
            assert!((2..=3).contains(&g.n_types()));
            assert!((2..=4).contains(&g.n_actions()));
        }
    }
}
