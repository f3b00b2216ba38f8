//! Belief restrictions and equilibrium refinement verdicts.
//!
//! [`Analysis`] caches the rational compatibility order of a game so that
//! many profiles can be checked against it; the free functions build one
//! on the fly.

mod beliefs;
mod checks;
mod construct;
mod divine;
mod report;

pub use beliefs::{
    br_to_belief_set, equilibrium_undominated_types, odds_ratio_polytope, rationality_compatible_beliefs_with, uniform_beliefs_with,
};
pub use checks::Failure;
pub use divine::{
    deviation_sets, divine_trace, is_divine, nwbr_path_equivalent, nwbr_prune, passes_nwbr, DeviationSets, DivineRound, DivineSignalTrace,
    DivineTrace, NwbrSignal,
};
pub use report::{RefinementReport, SignalReport};

use crate::compat::{compatibility_order, CompatibilityOrder};
use crate::error::{Error, Result};
use crate::game::{SignalingGame, StrategyProfile};
use crate::polytope::BeliefPolytope;

/// A game together with its (payoff-knowledge) compatibility order.
#[derive(Debug, Clone)]
pub struct Analysis<'g> {
    game: &'g SignalingGame,
    order: CompatibilityOrder,
}

impl<'g> Analysis<'g> {
    pub fn new(game: &'g SignalingGame) -> Result<Self> {
        Ok(Analysis { game, order: compatibility_order(game, true)? })
    }

    pub fn game(&self) -> &SignalingGame {
        self.game
    }

    pub fn order(&self) -> &CompatibilityOrder {
        &self.order
    }

    pub fn rationality_compatible_beliefs(&self, profile: &StrategyProfile, s: usize) -> BeliefPolytope {
        rationality_compatible_beliefs_with(self.game, &self.order, profile, s)
    }

    pub fn uniform_beliefs(&self, s: usize) -> BeliefPolytope {
        uniform_beliefs_with(self.game, &self.order, s)
    }

    pub fn is_nash(&self, profile: &StrategyProfile) -> bool {
        checks::nash_failures(self.game, profile).is_empty()
    }

    pub fn on_path_strict_for_receiver(&self, profile: &StrategyProfile) -> bool {
        self.is_nash(profile) && checks::on_path_strict_failures(self.game, profile).is_empty()
    }

    pub fn passes_intuitive_criterion(&self, profile: &StrategyProfile) -> Result<bool> {
        if !self.is_nash(profile) {
            return Err(Error::Contract("the Intuitive Criterion is defined for Nash equilibria".into()));
        }
        Ok(checks::intuitive_criterion_failures(self.game, profile)?.is_empty())
    }

    pub fn is_rce(&self, profile: &StrategyProfile) -> Result<bool> {
        Ok(self.is_nash(profile) && checks::rce_failures(self.game, &self.order, profile)?.is_empty())
    }

    pub fn is_urce(&self, profile: &StrategyProfile) -> Result<bool> {
        Ok(self.is_nash(profile) && checks::urce_failures(self.game, &self.order, profile, false)?.is_empty())
    }

    pub fn is_quasi_strict_urce(&self, profile: &StrategyProfile) -> Result<bool> {
        Ok(self.on_path_strict_for_receiver(profile)
            && checks::sender_strict_failures(self.game, profile).is_empty()
            && checks::urce_failures(self.game, &self.order, profile, true)?.is_empty())
    }
}

pub fn rationality_compatible_beliefs(game: &SignalingGame, profile: &StrategyProfile, s: usize) -> Result<BeliefPolytope> {
    Ok(Analysis::new(game)?.rationality_compatible_beliefs(profile, s))
}

pub fn uniform_beliefs(game: &SignalingGame, s: usize) -> Result<BeliefPolytope> {
    Ok(Analysis::new(game)?.uniform_beliefs(s))
}

pub fn is_nash(game: &SignalingGame, profile: &StrategyProfile) -> bool {
    checks::nash_failures(game, profile).is_empty()
}

pub fn on_path_strict_for_receiver(game: &SignalingGame, profile: &StrategyProfile) -> bool {
    is_nash(game, profile) && checks::on_path_strict_failures(game, profile).is_empty()
}

pub fn passes_intuitive_criterion(game: &SignalingGame, profile: &StrategyProfile) -> Result<bool> {
    if !is_nash(game, profile) {
        return Err(Error::Contract("the Intuitive Criterion is defined for Nash equilibria".into()));
    }
    Ok(checks::intuitive_criterion_failures(game, profile)?.is_empty())
}

pub fn is_rce(game: &SignalingGame, profile: &StrategyProfile) -> Result<bool> {
    Analysis::new(game)?.is_rce(profile)
}

pub fn is_urce(game: &SignalingGame, profile: &StrategyProfile) -> Result<bool> {
    Analysis::new(game)?.is_urce(profile)
}

pub fn is_quasi_strict_urce(game: &SignalingGame, profile: &StrategyProfile) -> Result<bool> {
    Analysis::new(game)?.is_quasi_strict_urce(profile)
}

pub fn urce_path_equivalent_rce(game: &SignalingGame, profile: &StrategyProfile) -> Result<StrategyProfile> {
    Analysis::new(game)?.urce_path_equivalent_rce(profile)
}

pub fn analyze(game: &SignalingGame, profile: &StrategyProfile) -> Result<RefinementReport> {
    Analysis::new(game)?.report(profile)
}
