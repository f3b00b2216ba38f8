//! Rational compatibility between types and rational dominance of signals.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::feasibility::{is_feasible, LinearSystem};
use crate::game::SignalingGame;
use crate::rational::{self, Q};

/// Per-signal relation `θ' ≿_s θ''`, indexed `[s][θ'][θ'']`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityOrder {
    restricted: bool,
    relation: Vec<Vec<Vec<bool>>>,
}

/// One edge of the order, by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityEdge {
    pub signal: String,
    pub more: String,
    pub less: String,
}

impl CompatibilityOrder {
    pub fn restricted_to_rational(&self) -> bool {
        self.restricted
    }

    pub fn holds(&self, s: usize, more: usize, less: usize) -> bool {
        self.relation[s][more][less]
    }

    /// All `(s, θ', θ'')` with `θ' ≿_s θ''`, in index order.
    pub fn pairs(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for (s, m) in self.relation.iter().enumerate() {
            for (a, row) in m.iter().enumerate() {
                for (b, &v) in row.iter().enumerate() {
                    if v {
                        out.push((s, a, b));
                    }
                }
            }
        }
        out
    }

    pub fn pairs_at(&self, s: usize) -> Vec<(usize, usize)> {
        self.pairs().into_iter().filter(|&(x, _, _)| x == s).map(|(_, a, b)| (a, b)).collect()
    }

    pub fn edges(&self, game: &SignalingGame) -> Vec<CompatibilityEdge> {
        self.pairs()
            .into_iter()
            .map(|(s, a, b)| CompatibilityEdge {
                signal: game.signals()[s].clone(),
                more: game.types()[a].clone(),
                less: game.types()[b].clone(),
            })
            .collect()
    }
}

/// Adds `u1(θ, s, π₂(·|s))·sign` to `coeffs`.
fn add_payoff(game: &SignalingGame, sys: &LinearSystem, coeffs: &mut [Q], t: usize, s: usize, sign: i64) {
    let off = sys.offset(s);
    for a in 0..game.n_actions() {
        let v = game.u1(t, s, a);
        if sign > 0 {
            coeffs[off + a] += v;
        } else {
            coeffs[off + a] -= v;
        }
    }
}

/// Receiver strategies (rational or unrestricted) at which `s` is a weak best response for `t`.
fn weak_best_response_system(game: &SignalingGame, t: usize, s: usize, restricted: bool) -> LinearSystem {
    let mut sys = LinearSystem::new(game.receiver_blocks(restricted));
    for other in (0..game.n_signals()).filter(|&o| o != s) {
        let mut c = sys.zeros();
        add_payoff(game, &sys, &mut c, t, s, 1);
        add_payoff(game, &sys, &mut c, t, other, -1);
        sys.ge(c, Q::zero());
    }
    sys
}

/// Decides `θ' ≿_s θ''`: whenever `s` is a weak best response for `θ''`
/// against a receiver strategy, it is a strict best response for `θ'`.
///
/// The negation is a union over the alternative signal `s̃` that `θ'` weakly
/// prefers, so the relation holds iff each of those systems is infeasible.
/// With a single signal there is no alternative and the relation holds.
pub fn more_compatible(game: &SignalingGame, s: usize, more: usize, less: usize, restricted: bool) -> Result<bool> {
    if more == less {
        return Err(Error::Contract("compatibility is only defined for distinct types".into()));
    }
    if s >= game.n_signals() || more >= game.n_types() || less >= game.n_types() {
        return Err(Error::Contract("index out of range".into()));
    }
    let base = weak_best_response_system(game, less, s, restricted);
    for alt in (0..game.n_signals()).filter(|&o| o != s) {
        let mut sys = base.clone();
        let mut c = sys.zeros();
        add_payoff(game, &sys, &mut c, more, alt, 1);
        add_payoff(game, &sys, &mut c, more, s, -1);
        sys.ge(c, Q::zero());
        if is_feasible(&sys)?.is_feasible() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn response_set(game: &SignalingGame, s: usize, restricted: bool) -> Vec<usize> {
    if restricted {
        game.conditionally_undominated_actions(s).to_vec()
    } else {
        (0..game.n_actions()).collect()
    }
}

fn strictly_dominant(game: &SignalingGame, t: usize, s: usize, restricted: bool) -> bool {
    let worst = rational::min(response_set(game, s, restricted).iter().map(|&a| game.u1(t, s, a))).expect("non-empty");
    (0..game.n_signals())
        .filter(|&o| o != s)
        .all(|o| response_set(game, o, restricted).iter().all(|&a| &worst > game.u1(t, o, a)))
}

fn strictly_dominated(game: &SignalingGame, t: usize, s: usize, restricted: bool) -> Result<bool> {
    Ok(!is_feasible(&weak_best_response_system(game, t, s, restricted))?.is_feasible())
}

/// `s` is a strict best response for `t` against every rational receiver strategy.
pub fn rationally_strictly_dominant(game: &SignalingGame, t: usize, s: usize) -> bool {
    strictly_dominant(game, t, s, true)
}

/// `s` is not a weak best response for `t` against any rational receiver strategy.
pub fn rationally_strictly_dominated(game: &SignalingGame, t: usize, s: usize) -> Result<bool> {
    strictly_dominated(game, t, s, true)
}

/// Builds the order over every signal and ordered pair of distinct types,
/// then checks transitivity and the mutual-ranking exception.
pub fn compatibility_order(game: &SignalingGame, restricted: bool) -> Result<CompatibilityOrder> {
    let n = game.n_types();
    let mut relation = vec![vec![vec![false; n]; n]; game.n_signals()];
    for (s, m) in relation.iter_mut().enumerate() {
        for a in 0..n {
            for b in (0..n).filter(|&b| b != a) {
                m[a][b] = more_compatible(game, s, a, b, restricted)?;
            }
        }
    }
    let order = CompatibilityOrder { restricted, relation };
    validate(game, &order)?;
    Ok(order)
}

fn validate(game: &SignalingGame, order: &CompatibilityOrder) -> Result<()> {
    let n = game.n_types();
    for s in 0..game.n_signals() {
        for a in 0..n {
            for b in 0..n {
                if a == b || !order.holds(s, a, b) {
                    continue;
                }
                for c in (0..n).filter(|&c| c != a && c != b) {
                    if order.holds(s, b, c) && !order.holds(s, a, c) {
                        return Err(Error::Internal(format!(
                            "compatibility at `{}` is not transitive ({a}, {b}, {c})",
                            game.signals()[s]
                        )));
                    }
                }
                if a < b && order.holds(s, b, a) {
                    let r = order.restricted;
                    let dominant = strictly_dominant(game, a, s, r) && strictly_dominant(game, b, s, r);
                    let dominated = strictly_dominated(game, a, s, r)? && strictly_dominated(game, b, s, r)?;
                    if !dominant && !dominated {
                        return Err(Error::Internal(format!(
                            "types {a} and {b} rank each other at `{}` without a dominance explanation",
                            game.signals()[s]
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}
