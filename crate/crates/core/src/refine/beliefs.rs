use crate::compat::CompatibilityOrder;
use crate::error::{Error, Result};
use crate::game::{SignalingGame, StrategyProfile};
use crate::polytope::BeliefPolytope;
use crate::rational;

/// `P_{θ'▷θ''}`: beliefs whose odds of `θ'` to `θ''` are at least the prior odds.
pub fn odds_ratio_polytope(game: &SignalingGame, more: usize, less: usize) -> Result<BeliefPolytope> {
    if more == less {
        return Err(Error::Contract("odds-ratio set needs two distinct types".into()));
    }
    let mut p = BeliefPolytope::simplex(game.n_types());
    p.add_odds_ratio(more, less, game.prior());
    Ok(p)
}

/// `J̃(s, π*)`: types for which some undominated response to `s` pays at
/// least their equilibrium value.
pub fn equilibrium_undominated_types(game: &SignalingGame, profile: &StrategyProfile, s: usize) -> Vec<usize> {
    let acts = game.conditionally_undominated_actions(s);
    (0..game.n_types())
        .filter(|&t| {
            let best = rational::max(acts.iter().map(|&a| game.u1(t, s, a))).expect("A_s^BR is non-empty");
            best >= game.equilibrium_value(profile, t)
        })
        .collect()
}

/// `Δ(Θ_s)`, widened to the whole simplex when `s` is dominated for every type.
pub(crate) fn undominated_type_simplex(game: &SignalingGame, s: usize) -> BeliefPolytope {
    let types = game.types_for_signal(s);
    if types.is_empty() {
        BeliefPolytope::simplex(game.n_types())
    } else {
        BeliefPolytope::on_support(game.n_types(), &types)
    }
}

fn with_order(mut p: BeliefPolytope, game: &SignalingGame, order: &CompatibilityOrder, s: usize) -> BeliefPolytope {
    for (more, less) in order.pairs_at(s) {
        p.add_odds_ratio(more, less, game.prior());
    }
    p
}

/// `P̃(s, π*)` for a precomputed order.
pub fn rationality_compatible_beliefs_with(
    game: &SignalingGame,
    order: &CompatibilityOrder,
    profile: &StrategyProfile,
    s: usize,
) -> BeliefPolytope {
    let j = equilibrium_undominated_types(game, profile, s);
    if j.is_empty() {
        undominated_type_simplex(game, s)
    } else {
        with_order(BeliefPolytope::on_support(game.n_types(), &j), game, order, s)
    }
}

/// `P̂(s)` for a precomputed order.
pub fn uniform_beliefs_with(game: &SignalingGame, order: &CompatibilityOrder, s: usize) -> BeliefPolytope {
    with_order(undominated_type_simplex(game, s), game, order, s)
}

/// Actions that best respond to at least one belief in `poly`.
pub fn br_to_belief_set(game: &SignalingGame, poly: &BeliefPolytope, s: usize) -> Result<Vec<usize>> {
    if poly.is_empty()? {
        return Err(Error::EmptyPolytope);
    }
    let mut out = Vec::new();
    for a in 0..game.n_actions() {
        if game.is_best_response_in(poly, s, &[a])? {
            out.push(a);
        }
    }
    Ok(out)
}

/// Like [`br_to_belief_set`] but the empty set has no best responses.
pub(crate) fn br_or_none(game: &SignalingGame, poly: &BeliefPolytope, s: usize) -> Result<Vec<usize>> {
    match br_to_belief_set(game, poly, s) {
        Err(Error::EmptyPolytope) => Ok(Vec::new()),
        other => other,
    }
}

