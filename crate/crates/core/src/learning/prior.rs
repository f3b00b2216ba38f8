use serde::{Deserialize, Serialize};

use super::dirichlet::DirichletBelief;
use crate::error::{Error, Result};
use crate::game::SignalingGame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum PriorMode {
    /// Agents know the opponents' payoffs: senders expect only responses in
    /// `A_s^BR`, receivers expect type `θ` only to send signals in `S_θ`.
    #[default]
    PayoffKnowledge,
    /// Beliefs over all of `Δ(A)` and `Δ(S)`.
    FullSupport,
}

/// A regular prior made of independent Dirichlet factors: one per signal for
/// senders (over responses) and one per type for receivers (over signals).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegularPriorSpec {
    pub mode: PriorMode,
    pub sender: Vec<DirichletBelief>,
    pub receiver: Vec<DirichletBelief>,
}

impl RegularPriorSpec {
    /// Unit weights on the mode's default supports.
    pub fn uniform(game: &SignalingGame, mode: PriorMode) -> Self {
        let sender = (0..game.n_signals())
            .map(|s| DirichletBelief::uniform(default_action_support(game, mode, s)).expect("non-empty support"))
            .collect();
        let receiver = (0..game.n_types())
            .map(|t| DirichletBelief::uniform(default_signal_support(game, mode, t)).expect("non-empty support"))
            .collect();
        RegularPriorSpec { mode, sender, receiver }
    }

    /// Checks the factors against the game.
    ///
    /// In payoff-knowledge mode a support must contain `A_s^BR` (resp. `S_θ`).
    /// Extra outcomes are tolerated so that concrete priors which put some
    /// weight on dominated responses can still be expressed.
    pub fn new(game: &SignalingGame, mode: PriorMode, sender: Vec<DirichletBelief>, receiver: Vec<DirichletBelief>) -> Result<Self> {
        if sender.len() != game.n_signals() {
            return Err(Error::Dimension { expected: game.n_signals(), got: sender.len() });
        }
        if receiver.len() != game.n_types() {
            return Err(Error::Dimension { expected: game.n_types(), got: receiver.len() });
        }
        for (s, b) in sender.iter().enumerate() {
            check_support(b, &default_action_support(game, mode, s), game.n_actions(), mode, || {
                format!("sender prior after `{}`", game.signals()[s])
            })?;
        }
        for (t, b) in receiver.iter().enumerate() {
            check_support(b, &default_signal_support(game, mode, t), game.n_signals(), mode, || {
                format!("receiver prior about `{}`", game.types()[t])
            })?;
        }
        Ok(RegularPriorSpec { mode, sender, receiver })
    }

    /// Signals a sender of type `t` considers: `S_θ`, or all of `S`.
    pub fn allowed_signals(&self, game: &SignalingGame, t: usize) -> Vec<usize> {
        default_signal_support(game, self.mode, t)
    }
}

fn default_action_support(game: &SignalingGame, mode: PriorMode, s: usize) -> Vec<usize> {
    match mode {
        PriorMode::PayoffKnowledge => game.conditionally_undominated_actions(s).to_vec(),
        PriorMode::FullSupport => (0..game.n_actions()).collect(),
    }
}

fn default_signal_support(game: &SignalingGame, mode: PriorMode, t: usize) -> Vec<usize> {
    match mode {
        PriorMode::PayoffKnowledge => game.undominated_signals(t).to_vec(),
        PriorMode::FullSupport => (0..game.n_signals()).collect(),
    }
}

fn check_support(b: &DirichletBelief, required: &[usize], n: usize, mode: PriorMode, what: impl Fn() -> String) -> Result<()> {
    if b.support().iter().any(|&o| o >= n) {
        return Err(Error::Params(format!("{}: outcome index out of range", what())));
    }
    if let Some(missing) = required.iter().find(|o| !b.contains(**o)) {
        return Err(Error::Params(format!("{}: support misses outcome {missing}", what())));
    }
    if mode == PriorMode::FullSupport && b.support().len() != n {
        return Err(Error::Params(format!("{}: full-support prior must cover every outcome", what())));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite;

    #[test]
    fn payoff_knowledge_supports() {
        let g = suite::entry_game();
        let p = RegularPriorSpec::uniform(&g, PriorMode::PayoffKnowledge);
        assert_eq!(p.sender[0].support(), &[0, 1]);
        assert_eq!(p.sender[1].support(), &[0, 1, 2]);
        let f = RegularPriorSpec::uniform(&g, PriorMode::FullSupport);
        assert_eq!(f.sender[0].support(), &[0, 1, 2]);
    }

    #[test]
    fn superset_allowed_subset_rejected() {
        let g = suite::left_right_game();
        let wide = DirichletBelief::new(vec![0, 1, 2], vec![1.0, 10.0, 1.0]).unwrap();
        let base = RegularPriorSpec::uniform(&g, PriorMode::PayoffKnowledge);
        let mut sender = base.sender.clone();
        sender[0] = wide;
        assert!(RegularPriorSpec::new(&g, PriorMode::PayoffKnowledge, sender.clone(), base.receiver.clone()).is_ok());
        sender[0] = DirichletBelief::uniform(vec![1]).unwrap();
        assert!(RegularPriorSpec::new(&g, PriorMode::PayoffKnowledge, sender, base.receiver.clone()).is_err());
        assert!(RegularPriorSpec::new(&g, PriorMode::FullSupport, base.sender, base.receiver).is_err());
    }
}
