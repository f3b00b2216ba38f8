//! Deviation sets over mixed best responses, the iterated divine belief
//! restriction, and NWBR pruning.

use num_traits::Zero;
use serde::Serialize;

use super::beliefs::undominated_type_simplex;
use crate::error::{Error, Result};
use crate::feasibility::{is_feasible, LinearSystem, SimplexBlock};
use crate::game::{SignalingGame, StrategyProfile};
use crate::polytope::BeliefPolytope;
use crate::rational::Q;

/// `D(θ,s;π*)` and `D°(θ,s;π*)` described piecewise over the maximal
/// jointly optimal supports `B`: on `Δ(B)`, `D` is `u₁(θ,s,α) > v` and
/// `D°` is `u₁(θ,s,α) = v`.
#[derive(Debug, Clone, PartialEq)]
pub struct DeviationSets {
    pub supports: Vec<Vec<usize>>,
    pub payoffs: Vec<Q>,
    pub value: Q,
}

impl DeviationSets {
    fn system(&self, b: &[usize]) -> (LinearSystem, Vec<Q>) {
        let n = self.payoffs.len();
        let sys = LinearSystem::new(vec![SimplexBlock::with_support("alpha", n, b)]);
        let coeffs = self.payoffs.clone();
        (sys, coeffs)
    }

    /// Some `α` in `D` (strict gain) exists.
    pub fn has_strict(&self) -> Result<bool> {
        for b in &self.supports {
            let (mut sys, c) = self.system(b);
            sys.gt(c, -self.value.clone());
            if is_feasible(&sys)?.is_feasible() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Some `α` in `D°` (indifference) exists.
    pub fn has_indifferent(&self) -> Result<bool> {
        for b in &self.supports {
            let (mut sys, c) = self.system(b);
            sys.equal(c, -self.value.clone());
            if is_feasible(&sys)?.is_feasible() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// `D ∪ D°` is non-empty, i.e. some pure action in a support pays at least `v`.
    pub fn weakly_tempted(&self) -> bool {
        self.supports.iter().flatten().any(|&a| self.payoffs[a] >= self.value)
    }

    /// Membership of a mixed response in `D`/`D°`: `Some(true)` for `D`,
    /// `Some(false)` for `D°`, `None` when it is in neither or not in MBR.
    pub fn classify(&self, alpha: &[Q]) -> Option<bool> {
        let supp: Vec<usize> = (0..alpha.len()).filter(|&a| !alpha[a].is_zero()).collect();
        if !self.supports.iter().any(|b| supp.iter().all(|a| b.contains(a))) {
            return None;
        }
        let u = crate::game::dot(&self.payoffs, alpha);
        if u > self.value {
            Some(true)
        } else if u == self.value {
            Some(false)
        } else {
            None
        }
    }

    /// `D(self) ∪ D°(self) ⊆ D(other)`, decided on each support.
    pub fn weakly_inside_strict(&self, other: &DeviationSets) -> Result<bool> {
        debug_assert_eq!(self.supports, other.supports);
        for b in &self.supports {
            let (mut sys, c) = self.system(b);
            sys.ge(c, -self.value.clone());
            sys.ge(other.payoffs.iter().map(|x| -x.clone()).collect(), other.value.clone());
            if is_feasible(&sys)?.is_feasible() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Maximal supports of mixed best responses to beliefs in `poly`.
fn mbr_supports(game: &SignalingGame, s: usize, poly: &BeliefPolytope) -> Result<Vec<Vec<usize>>> {
    Ok(SignalingGame::maximal_supports(&game.mbr_support_sets_in(s, poly)?))
}

fn sets_for(game: &SignalingGame, profile: &StrategyProfile, s: usize, supports: &[Vec<usize>]) -> Vec<DeviationSets> {
    (0..game.n_types())
        .map(|t| DeviationSets { supports: supports.to_vec(), payoffs: game.u1_row(t, s).to_vec(), value: game.equilibrium_value(profile, t) })
        .collect()
}

/// Deviation sets of type `t` at `s` over `MBR(s)` (all beliefs).
pub fn deviation_sets(game: &SignalingGame, profile: &StrategyProfile, t: usize, s: usize) -> Result<DeviationSets> {
    let supports = mbr_supports(game, s, &BeliefPolytope::simplex(game.n_types()))?;
    Ok(DeviationSets { supports, payoffs: game.u1_row(t, s).to_vec(), value: game.equilibrium_value(profile, t) })
}

/// One round of the divine restriction at one signal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivineRound {
    pub round: usize,
    /// Types whose deviation sets are empty (equilibrium dominated).
    pub dropped_types: Vec<String>,
    /// `(more, less)` pairs whose odds ratio is bounded below by the prior odds.
    pub new_pairs: Vec<(String, String)>,
    /// Actions no longer a best response to any allowed belief.
    pub deleted_actions: Vec<String>,
    pub allowed_actions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivineSignalTrace {
    pub signal: String,
    pub rounds: Vec<DivineRound>,
    /// True when every type was equilibrium dominated, so beliefs were left unrestricted.
    pub unrestricted: bool,
    pub allowed_beliefs: String,
    pub passes: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DivineTrace {
    pub signals: Vec<DivineSignalTrace>,
    pub passes: bool,
}

fn names(list: &[String], idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| list[i].clone()).collect()
}

fn require_nash(game: &SignalingGame, profile: &StrategyProfile) -> Result<()> {
    if super::checks::nash_failures(game, profile).is_empty() {
        Ok(())
    } else {
        Err(Error::Contract("profile is not a Nash equilibrium".into()))
    }
}

/// Final allowed beliefs at an off-path signal, with the round-by-round trace.
pub(crate) fn divine_beliefs(game: &SignalingGame, profile: &StrategyProfile, s: usize) -> Result<(BeliefPolytope, Vec<DivineRound>, bool)> {
    let n = game.n_types();
    let mut allowed = BeliefPolytope::simplex(n);
    let mut active: Vec<usize> = (0..n).collect();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let mut prev_actions: Vec<usize> = (0..game.n_actions()).collect();
    let mut rounds = Vec::new();

    for round in 1.. {
        let supports = mbr_supports(game, s, &allowed)?;
        let sets = sets_for(game, profile, s, &supports);
        let tempted: Vec<usize> = active.iter().copied().filter(|&t| sets[t].weakly_tempted()).collect();
        if tempted.is_empty() {
            if round == 1 {
                let base = undominated_type_simplex(game, s);
                let acts = super::beliefs::br_or_none(game, &base, s)?;
                rounds.push(DivineRound {
                    round,
                    dropped_types: Vec::new(),
                    new_pairs: Vec::new(),
                    deleted_actions: names(game.actions(), prev_actions.iter().copied().filter(|a| !acts.contains(a))),
                    allowed_actions: names(game.actions(), acts),
                });
                return Ok((base, rounds, true));
            }
            break;
        }
        let dropped: Vec<usize> = active.iter().copied().filter(|t| !tempted.contains(t)).collect();
        let mut fresh = Vec::new();
        for &more in &tempted {
            for &less in &tempted {
                if more != less && !pairs.contains(&(more, less)) && sets[less].weakly_inside_strict(&sets[more])? {
                    fresh.push((more, less));
                }
            }
        }
        let mut next = allowed.clone();
        next.restrict_support(&tempted);
        for &(more, less) in &fresh {
            next.add_odds_ratio(more, less, game.prior());
        }
        if next.is_empty()? {
            break;
        }
        let acts = super::beliefs::br_or_none(game, &next, s)?;
        let changed = !dropped.is_empty() || !fresh.is_empty();
        rounds.push(DivineRound {
            round,
            dropped_types: names(game.types(), dropped.iter().copied()),
            new_pairs: fresh.iter().map(|&(a, b)| (game.types()[a].clone(), game.types()[b].clone())).collect(),
            deleted_actions: names(game.actions(), prev_actions.iter().copied().filter(|a| !acts.contains(a))),
            allowed_actions: names(game.actions(), acts.iter().copied()),
        });
        allowed = next;
        active = tempted;
        pairs.extend(fresh);
        prev_actions = acts;
        if !changed {
            break;
        }
    }
    Ok((allowed, rounds, false))
}

/// Runs the divine restriction at every off-path signal.
pub fn divine_trace(game: &SignalingGame, profile: &StrategyProfile) -> Result<DivineTrace> {
    require_nash(game, profile)?;
    let mut signals = Vec::new();
    for s in (0..game.n_signals()).filter(|&s| !game.is_on_path(&profile.sender, s)) {
        let (allowed, rounds, unrestricted) = divine_beliefs(game, profile, s)?;
        let passes = game.is_best_response_in(&allowed, s, &profile.receiver.support(s))?;
        signals.push(DivineSignalTrace {
            signal: game.signals()[s].clone(),
            rounds,
            unrestricted,
            allowed_beliefs: allowed.describe(game.types()),
            passes,
        });
    }
    let passes = signals.iter().all(|t| t.passes);
    Ok(DivineTrace { signals, passes })
}

pub fn is_divine(game: &SignalingGame, profile: &StrategyProfile) -> Result<bool> {
    Ok(divine_trace(game, profile)?.passes)
}

/// NWBR survivors at one off-path signal, plus whether the first round
/// would have deleted every type (in which case nothing is restricted).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NwbrSignal {
    pub signal: String,
    pub survivors: Vec<String>,
    pub first_round_deletes_all: bool,
    #[serde(skip)]
    pub survivor_indices: Vec<usize>,
}

/// `θ` survives if some `α` in `D°(θ)` lies outside every other survivor's `D`.
fn nwbr_survives(game: &SignalingGame, sets: &[DeviationSets], alive: &[usize], t: usize) -> Result<bool> {
    for b in &sets[t].supports {
        let mut sys = LinearSystem::new(vec![SimplexBlock::with_support("alpha", game.n_actions(), b)]);
        sys.equal(sets[t].payoffs.clone(), -sets[t].value.clone());
        for &o in alive.iter().filter(|&&o| o != t) {
            sys.ge(sets[o].payoffs.iter().map(|x| -x.clone()).collect(), sets[o].value.clone());
        }
        if is_feasible(&sys)?.is_feasible() {
            return Ok(true);
        }
    }
    Ok(false)
}

pub(crate) fn nwbr_signal(game: &SignalingGame, profile: &StrategyProfile, s: usize) -> Result<NwbrSignal> {
    let n = game.n_types();
    let mut alive: Vec<usize> = (0..n).collect();
    let mut first_all = false;
    for round in 1.. {
        let poly = if round == 1 { BeliefPolytope::simplex(n) } else { BeliefPolytope::on_support(n, &alive) };
        let supports = mbr_supports(game, s, &poly)?;
        let sets = sets_for(game, profile, s, &supports);
        let mut keep = Vec::new();
        for &t in &alive {
            if nwbr_survives(game, &sets, &alive, t)? {
                keep.push(t);
            }
        }
        if keep.is_empty() {
            first_all = round == 1;
            break;
        }
        if keep.len() == alive.len() {
            break;
        }
        alive = keep;
    }
    Ok(NwbrSignal {
        signal: game.signals()[s].clone(),
        survivors: names(game.types(), alive.iter().copied()),
        first_round_deletes_all: first_all,
        survivor_indices: alive,
    })
}

/// Iterated NWBR pruning at every off-path signal.
pub fn nwbr_prune(game: &SignalingGame, profile: &StrategyProfile) -> Result<Vec<NwbrSignal>> {
    require_nash(game, profile)?;
    (0..game.n_signals()).filter(|&s| !game.is_on_path(&profile.sender, s)).map(|s| nwbr_signal(game, profile, s)).collect()
}

/// Receiver play after each off-path signal best responds to one belief on the survivors.
pub fn passes_nwbr(game: &SignalingGame, profile: &StrategyProfile) -> Result<bool> {
    for sig in nwbr_prune(game, profile)? {
        let s = game.signal_index(&sig.signal).expect("known signal");
        let poly = BeliefPolytope::on_support(game.n_types(), &sig.survivor_indices);
        if !game.is_best_response_in(&poly, s, &profile.receiver.support(s))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Path-equivalent profile passing NWBR: after each off-path signal where
/// pruning bites, play a best response to a point belief on a survivor.
pub fn nwbr_path_equivalent(game: &SignalingGame, profile: &StrategyProfile) -> Result<StrategyProfile> {
    let mut out = profile.clone();
    for sig in nwbr_prune(game, profile)? {
        if sig.first_round_deletes_all {
            continue;
        }
        let s = game.signal_index(&sig.signal).expect("known signal");
        let t = sig.survivor_indices[0];
        let a = game.best_responses_to_belief(&crate::game::Belief::point(game.n_types(), t), s)[0];
        out.receiver.set_pure(s, a);
    }
    Ok(out)
}

