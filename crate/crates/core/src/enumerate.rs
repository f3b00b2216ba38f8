//! Exhaustive pure-strategy Nash enumeration for small games.

use crate::game::{ReceiverStrategy, SenderStrategy, SignalingGame, StrategyProfile};
use crate::refine;

fn product(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for c in choices {
        out = out.into_iter().flat_map(|prefix| c.iter().map(move |&x| [prefix.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Every pure Nash equilibrium whose off-path responses are conditionally
/// undominated: sender maps range over `S^Θ`, on-path responses over best
/// responses to the posterior, off-path responses over `A_s^BR`.
pub fn pure_nash_equilibria(game: &SignalingGame) -> Vec<StrategyProfile> {
    let sender_maps = product(&vec![(0..game.n_signals()).collect::<Vec<_>>(); game.n_types()]);
    let mut out = Vec::new();
    for map in sender_maps {
        let sender = SenderStrategy::pure(game, &map).expect("in range");
        let choices: Vec<Vec<usize>> = (0..game.n_signals())
            .map(|s| match game.bayes_posterior(&sender, s) {
                Ok(post) => game.best_responses_to_belief(&post, s),
                Err(_) => game.conditionally_undominated_actions(s).to_vec(),
            })
            .collect();
        for actions in product(&choices) {
            let profile = StrategyProfile::new(sender.clone(), ReceiverStrategy::pure(game, &actions).expect("in range"));
            if refine::is_nash(game, &profile) {
                out.push(profile);
            }
        }
    }
    out
}

/// The subset of [`pure_nash_equilibria`] that is on-path strict for the receiver.
pub fn strict_pure_nash_equilibria(game: &SignalingGame) -> Vec<StrategyProfile> {
    pure_nash_equilibria(game).into_iter().filter(|p| refine::on_path_strict_for_receiver(game, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite;

    #[test]
    fn left_right_equilibria_pool_on_l() {
        let g = suite::left_right_game();
        let eqs = pure_nash_equilibria(&g);
        assert_eq!(eqs.len(), 2);
        for p in &eqs {
            assert_eq!(p.sender.pure_signal(0), Some(0));
            assert_eq!(p.sender.pure_signal(1), Some(0));
            assert_eq!(p.receiver.support(0), vec![1]);
        }
    }

    #[test]
    fn product_counts() {
        assert_eq!(product(&[vec![0, 1], vec![0, 1, 2]]).len(), 6);
        assert_eq!(product(&[]).len(), 1);
    }
}
