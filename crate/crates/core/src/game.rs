//! Finite signaling games with exact rational payoffs, behavior strategies,
//! best responses, and the dominance sets that define rational strategies.

use std::collections::HashSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::feasibility::{is_feasible, LinearSystem, SimplexBlock};
use crate::polytope::BeliefPolytope;
use crate::rational::{self, Q};

/// A probability vector over types.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Belief(Vec<Q>);

impl Belief {
    pub fn new(probs: Vec<Q>) -> Result<Self> {
        if !rational::is_distribution(&probs) {
            return Err(Error::InvalidStrategy("belief must be a probability vector".into()));
        }
        Ok(Belief(probs))
    }

    pub(crate) fn new_unchecked(probs: Vec<Q>) -> Self {
        Belief(probs)
    }

    pub fn point(n: usize, t: usize) -> Self {
        let mut v = vec![Q::zero(); n];
        v[t] = Q::one();
        Belief(v)
    }

    pub fn probs(&self) -> &[Q] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `π₁`: for each type, a distribution over signals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SenderStrategy {
    rows: Vec<Vec<Q>>,
}

/// `π₂`: for each signal, a distribution over actions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReceiverStrategy {
    rows: Vec<Vec<Q>>,
}

fn check_rows(rows: &[Vec<Q>], n_rows: usize, width: usize, what: &str) -> Result<()> {
    if rows.len() != n_rows {
        return Err(Error::Dimension { expected: n_rows, got: rows.len() });
    }
    for row in rows {
        if row.len() != width {
            return Err(Error::Dimension { expected: width, got: row.len() });
        }
        if !rational::is_distribution(row) {
            return Err(Error::InvalidStrategy(format!("{what} row is not a probability vector")));
        }
    }
    Ok(())
}

fn point_row(width: usize, at: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); width];
    v[at] = Q::one();
    v
}

impl SenderStrategy {
    pub fn new(game: &SignalingGame, rows: Vec<Vec<Q>>) -> Result<Self> {
        check_rows(&rows, game.n_types(), game.n_signals(), "sender")?;
        Ok(SenderStrategy { rows })
    }

    /// Each type sends `signals[θ]` with probability one.
    pub fn pure(game: &SignalingGame, signals: &[usize]) -> Result<Self> {
        if signals.iter().any(|&s| s >= game.n_signals()) {
            return Err(Error::InvalidStrategy("signal index out of range".into()));
        }
        SenderStrategy::new(game, signals.iter().map(|&s| point_row(game.n_signals(), s)).collect())
    }

    pub fn row(&self, t: usize) -> &[Q] {
        &self.rows[t]
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn prob(&self, t: usize, s: usize) -> &Q {
        &self.rows[t][s]
    }

    /// Signal sent with certainty by type `t`, if pure.
    pub fn pure_signal(&self, t: usize) -> Option<usize> {
        self.rows[t].iter().position(|p| p.is_one())
    }
}

impl ReceiverStrategy {
    pub fn new(game: &SignalingGame, rows: Vec<Vec<Q>>) -> Result<Self> {
        check_rows(&rows, game.n_signals(), game.n_actions(), "receiver")?;
        Ok(ReceiverStrategy { rows })
    }

    pub fn pure(game: &SignalingGame, actions: &[usize]) -> Result<Self> {
        if actions.iter().any(|&a| a >= game.n_actions()) {
            return Err(Error::InvalidStrategy("action index out of range".into()));
        }
        ReceiverStrategy::new(game, actions.iter().map(|&a| point_row(game.n_actions(), a)).collect())
    }

    pub fn row(&self, s: usize) -> &[Q] {
        &self.rows[s]
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn set_row(&mut self, s: usize, row: Vec<Q>) {
        assert_eq!(row.len(), self.rows[s].len());
        self.rows[s] = row;
    }

    pub fn set_pure(&mut self, s: usize, a: usize) {
        let w = self.rows[s].len();
        self.rows[s] = point_row(w, a);
    }

    pub fn support(&self, s: usize) -> Vec<usize> {
        self.rows[s].iter().enumerate().filter(|(_, p)| p.is_positive()).map(|(a, _)| a).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrategyProfile {
    pub sender: SenderStrategy,
    pub receiver: ReceiverStrategy,
}

impl StrategyProfile {
    pub fn new(sender: SenderStrategy, receiver: ReceiverStrategy) -> Self {
        StrategyProfile { sender, receiver }
    }

    pub fn pure(game: &SignalingGame, signals: &[usize], actions: &[usize]) -> Result<Self> {
        Ok(StrategyProfile { sender: SenderStrategy::pure(game, signals)?, receiver: ReceiverStrategy::pure(game, actions)? })
    }

    /// Same sender play and same receiver play after every on-path signal.
    pub fn path_equivalent(&self, other: &StrategyProfile, game: &SignalingGame) -> bool {
        self.sender == other.sender
            && (0..game.n_signals())
                .filter(|&s| game.is_on_path(&self.sender, s))
                .all(|s| self.receiver.row(s) == other.receiver.row(s))
    }
}

/// A finite signaling game.
///
/// Payoffs are stored flat, indexed by `(type, signal, action)`. The
/// conditionally undominated action sets and undominated signal sets are
/// computed once at construction.
#[derive(Debug, Clone)]
pub struct SignalingGame {
    types: Vec<String>,
    signals: Vec<String>,
    actions: Vec<String>,
    prior: Vec<Q>,
    u1: Vec<Q>,
    u2: Vec<Q>,
    br_actions: Vec<Vec<usize>>,
    undominated: Vec<Vec<usize>>,
}

impl PartialEq for SignalingGame {
    fn eq(&self, other: &Self) -> bool {
        self.types == other.types
            && self.signals == other.signals
            && self.actions == other.actions
            && self.prior == other.prior
            && self.u1 == other.u1
            && self.u2 == other.u2
    }
}

fn check_names(names: &[String], what: &str) -> Result<()> {
    if names.is_empty() {
        return Err(Error::InvalidGame(format!("no {what}")));
    }
    let mut seen = HashSet::new();
    for n in names {
        if n.is_empty() || n.chars().any(|c| c.is_whitespace() || "(),:#".contains(c)) {
            return Err(Error::InvalidGame(format!("bad {what} name `{n}`")));
        }
        if !seen.insert(n) {
            return Err(Error::InvalidGame(format!("duplicate {what} `{n}`")));
        }
    }
    Ok(())
}

impl SignalingGame {
    /// Builds a game from payoff tables indexed `[type][signal][action]`.
    pub fn new(
        types: Vec<String>,
        signals: Vec<String>,
        actions: Vec<String>,
        prior: Vec<Q>,
        u1: Vec<Vec<Vec<Q>>>,
        u2: Vec<Vec<Vec<Q>>>,
    ) -> Result<Self> {
        check_names(&types, "type")?;
        check_names(&signals, "signal")?;
        check_names(&actions, "action")?;
        if prior.len() != types.len() {
            return Err(Error::Dimension { expected: types.len(), got: prior.len() });
        }
        if prior.iter().any(|p| !p.is_positive()) || !rational::sum(&prior).is_one() {
            return Err(Error::InvalidGame("prior must be strictly positive and sum to 1".into()));
        }
        let flatten = |table: Vec<Vec<Vec<Q>>>, name: &str| -> Result<Vec<Q>> {
            if table.len() != types.len() || table.iter().any(|r| r.len() != signals.len()) {
                return Err(Error::InvalidGame(format!("{name} table is not total over (type, signal)")));
            }
            let mut flat = Vec::with_capacity(types.len() * signals.len() * actions.len());
            for row in table.into_iter().flatten() {
                if row.len() != actions.len() {
                    return Err(Error::Dimension { expected: actions.len(), got: row.len() });
                }
                flat.extend(row);
            }
            Ok(flat)
        };
        let u1 = flatten(u1, "u1")?;
        let u2 = flatten(u2, "u2")?;
        let mut game = SignalingGame { types, signals, actions, prior, u1, u2, br_actions: Vec::new(), undominated: Vec::new() };
        game.br_actions = (0..game.n_signals()).map(|s| game.compute_br_actions(s)).collect::<Result<_>>()?;
        game.undominated = (0..game.n_types()).map(|t| game.compute_undominated(t)).collect();
        Ok(game)
    }

    /// Convenience constructor from integer tables.
    pub fn from_integers(
        types: &[&str],
        signals: &[&str],
        actions: &[&str],
        prior: Vec<Q>,
        u1: &[&[&[i64]]],
        u2: &[&[&[i64]]],
    ) -> Result<Self> {
        let conv = |t: &[&[&[i64]]]| t.iter().map(|r| r.iter().map(|c| c.iter().map(|&v| rational::q(v)).collect()).collect()).collect();
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect();
        SignalingGame::new(names(types), names(signals), names(actions), prior, conv(u1), conv(u2))
    }

    pub fn n_types(&self) -> usize {
        self.types.len()
    }
    pub fn n_signals(&self) -> usize {
        self.signals.len()
    }
    pub fn n_actions(&self) -> usize {
        self.actions.len()
    }
    pub fn types(&self) -> &[String] {
        &self.types
    }
    pub fn signals(&self) -> &[String] {
        &self.signals
    }
    pub fn actions(&self) -> &[String] {
        &self.actions
    }
    pub fn prior(&self) -> &[Q] {
        &self.prior
    }

    pub fn type_index(&self, name: &str) -> Option<usize> {
        self.types.iter().position(|n| n == name)
    }
    pub fn signal_index(&self, name: &str) -> Option<usize> {
        self.signals.iter().position(|n| n == name)
    }
    pub fn action_index(&self, name: &str) -> Option<usize> {
        self.actions.iter().position(|n| n == name)
    }

    fn idx(&self, t: usize, s: usize) -> usize {
        (t * self.signals.len() + s) * self.actions.len()
    }

    pub fn u1(&self, t: usize, s: usize, a: usize) -> &Q {
        &self.u1[self.idx(t, s) + a]
    }
    pub fn u2(&self, t: usize, s: usize, a: usize) -> &Q {
        &self.u2[self.idx(t, s) + a]
    }
    pub fn u1_row(&self, t: usize, s: usize) -> &[Q] {
        let i = self.idx(t, s);
        &self.u1[i..i + self.actions.len()]
    }
    pub fn u2_row(&self, t: usize, s: usize) -> &[Q] {
        let i = self.idx(t, s);
        &self.u2[i..i + self.actions.len()]
    }

    /// `Σ_a α(a)·u₁(θ,s,a)`.
    pub fn sender_payoff(&self, t: usize, s: usize, mixed: &[Q]) -> Result<Q> {
        if mixed.len() != self.n_actions() {
            return Err(Error::Dimension { expected: self.n_actions(), got: mixed.len() });
        }
        Ok(dot(self.u1_row(t, s), mixed))
    }

    pub(crate) fn sender_payoff_unchecked(&self, t: usize, s: usize, mixed: &[Q]) -> Q {
        dot(self.u1_row(t, s), mixed)
    }

    /// `E_{π*}[u₁ | θ]`.
    pub fn equilibrium_value(&self, profile: &StrategyProfile, t: usize) -> Q {
        (0..self.n_signals())
            .filter(|&s| !profile.sender.prob(t, s).is_zero())
            .fold(Q::zero(), |acc, s| acc + profile.sender.prob(t, s) * self.sender_payoff_unchecked(t, s, profile.receiver.row(s)))
    }

    /// Expected receiver payoff of action `a` after `s` under belief `p`.
    pub fn receiver_value(&self, p: &[Q], s: usize, a: usize) -> Q {
        p.iter().enumerate().filter(|(_, w)| !w.is_zero()).fold(Q::zero(), |acc, (t, w)| acc + w * self.u2(t, s, a))
    }

    /// `A_s^BR`: actions that best respond to some belief after `s`.
    pub fn conditionally_undominated_actions(&self, s: usize) -> &[usize] {
        &self.br_actions[s]
    }

    fn compute_br_actions(&self, s: usize) -> Result<Vec<usize>> {
        let poly = BeliefPolytope::simplex(self.n_types());
        let mut out = Vec::new();
        for a in 0..self.n_actions() {
            if self.is_best_response_in(&poly, s, &[a])? {
                out.push(a);
            }
        }
        Ok(out)
    }

    /// Is there a belief in `poly` at which every action in `set` is optimal?
    pub fn is_best_response_in(&self, poly: &BeliefPolytope, s: usize, set: &[usize]) -> Result<bool> {
        let Some(mut sys) = poly.system() else { return Ok(false) };
        self.add_optimality(&mut sys, 0, s, set);
        Ok(is_feasible(&sys)?.is_feasible())
    }

    /// Witness belief for [`Self::is_best_response_in`].
    pub fn best_response_witness(&self, poly: &BeliefPolytope, s: usize, set: &[usize]) -> Result<Option<Belief>> {
        let Some(mut sys) = poly.system() else { return Ok(None) };
        self.add_optimality(&mut sys, 0, s, set);
        Ok(is_feasible(&sys)?.witness().map(|w| Belief(w.to_vec())))
    }

    /// Adds constraints making every action in `set` optimal after `s`,
    /// for the belief block starting at variable `offset`.
    fn add_optimality(&self, sys: &mut LinearSystem, offset: usize, s: usize, set: &[usize]) {
        let n = sys.num_vars();
        let Some(&first) = set.first() else { return };
        for &a in set.iter().skip(1) {
            let mut c = vec![Q::zero(); n];
            for t in 0..self.n_types() {
                c[offset + t] = self.u2(t, s, a) - self.u2(t, s, first);
            }
            sys.equal(c, Q::zero());
        }
        for b in (0..self.n_actions()).filter(|b| !set.contains(b)) {
            let mut c = vec![Q::zero(); n];
            for t in 0..self.n_types() {
                c[offset + t] = self.u2(t, s, first) - self.u2(t, s, b);
            }
            sys.ge(c, Q::zero());
        }
    }

    /// `S_θ`: signals that best respond to some (not necessarily rational)
    /// receiver strategy. Quantifying over all of `Π₂` decouples across signals.
    pub fn undominated_signals(&self, t: usize) -> &[usize] {
        &self.undominated[t]
    }

    fn compute_undominated(&self, t: usize) -> Vec<usize> {
        (0..self.n_signals())
            .filter(|&s| {
                let best = rational::max(self.u1_row(t, s)).expect("non-empty actions");
                (0..self.n_signals()).filter(|&o| o != s).all(|o| best >= rational::min(self.u1_row(t, o)).expect("non-empty"))
            })
            .collect()
    }

    /// `Θ_s`: types for which `s` is not dominated.
    pub fn types_for_signal(&self, s: usize) -> Vec<usize> {
        (0..self.n_types()).filter(|&t| self.undominated[t].contains(&s)).collect()
    }

    pub fn is_on_path(&self, sender: &SenderStrategy, s: usize) -> bool {
        (0..self.n_types()).any(|t| !sender.prob(t, s).is_zero())
    }

    pub fn bayes_posterior(&self, sender: &SenderStrategy, s: usize) -> Result<Belief> {
        let weights: Vec<Q> = (0..self.n_types()).map(|t| &self.prior[t] * sender.prob(t, s)).collect();
        let total = rational::sum(&weights);
        if total.is_zero() {
            return Err(Error::OffPath(self.signals[s].clone()));
        }
        Ok(Belief(weights.into_iter().map(|w| w / &total).collect()))
    }

    /// Exact argmax of the expected receiver payoff; ties reported in action order.
    pub fn best_responses_to_belief(&self, p: &Belief, s: usize) -> Vec<usize> {
        let values: Vec<Q> = (0..self.n_actions()).map(|a| self.receiver_value(p.probs(), s, a)).collect();
        let best = rational::max(&values).expect("non-empty actions");
        (0..self.n_actions()).filter(|&a| values[a] == best).collect()
    }

    /// Every non-empty action set that is jointly optimal at some belief.
    pub fn mbr_support_sets(&self, s: usize) -> Result<Vec<Vec<usize>>> {
        self.mbr_support_sets_in(s, &BeliefPolytope::simplex(self.n_types()))
    }

    /// Jointly optimal action sets at some belief in `poly`. The family is
    /// closed under non-empty subsets, so candidates are grown level by level.
    pub fn mbr_support_sets_in(&self, s: usize, poly: &BeliefPolytope) -> Result<Vec<Vec<usize>>> {
        let mut family: Vec<Vec<usize>> = Vec::new();
        let mut level: Vec<Vec<usize>> = Vec::new();
        for a in 0..self.n_actions() {
            if self.is_best_response_in(poly, s, &[a])? {
                level.push(vec![a]);
            }
        }
        while !level.is_empty() {
            family.extend(level.iter().cloned());
            let known: HashSet<Vec<usize>> = level.iter().cloned().collect();
            let mut next = Vec::new();
            for set in &level {
                let last = *set.last().expect("non-empty");
                for a in last + 1..self.n_actions() {
                    let mut cand = set.clone();
                    cand.push(a);
                    let subsets_ok = (0..cand.len()).all(|skip| {
                        let sub: Vec<usize> = cand.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &x)| x).collect();
                        known.contains(&sub)
                    });
                    if subsets_ok && self.is_best_response_in(poly, s, &cand)? {
                        next.push(cand);
                    }
                }
            }
            level = next;
        }
        Ok(family)
    }

    /// Maximal members of the MBR support family.
    pub fn maximal_supports(family: &[Vec<usize>]) -> Vec<Vec<usize>> {
        family
            .iter()
            .filter(|b| !family.iter().any(|c| c.len() > b.len() && b.iter().all(|x| c.contains(x))))
            .cloned()
            .collect()
    }

    /// Value of signal `s` for type `t` against receiver strategy `π₂`.
    pub fn signal_value(&self, t: usize, s: usize, receiver: &ReceiverStrategy) -> Q {
        self.sender_payoff_unchecked(t, s, receiver.row(s))
    }

    /// Rational receiver strategies: blocks `Δ(A_s^BR)` (or `Δ(A)` when unrestricted).
    pub fn receiver_blocks(&self, restricted: bool) -> Vec<SimplexBlock> {
        (0..self.n_signals())
            .map(|s| {
                if restricted {
                    SimplexBlock::with_support(self.signals[s].clone(), self.n_actions(), &self.br_actions[s])
                } else {
                    SimplexBlock::new(self.signals[s].clone(), self.n_actions())
                }
            })
            .collect()
    }

    /// Is `π₂ ∈ Π₂•`?
    pub fn is_rational_receiver(&self, receiver: &ReceiverStrategy) -> bool {
        (0..self.n_signals()).all(|s| receiver.support(s).iter().all(|a| self.br_actions[s].contains(a)))
    }

    /// Is `π₁ ∈ Π₁•`?
    pub fn is_rational_sender(&self, sender: &SenderStrategy) -> bool {
        (0..self.n_types()).all(|t| (0..self.n_signals()).all(|s| sender.prob(t, s).is_zero() || self.undominated[t].contains(&s)))
    }
}

pub(crate) fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).filter(|(_, y)| !y.is_zero()).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Plain-data mirror of a strategy profile keyed by names (for JSON output).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct NamedProfile {
    pub sender: Vec<(String, Vec<String>)>,
    pub receiver: Vec<(String, Vec<String>)>,
}

impl NamedProfile {
    pub fn from_profile(game: &SignalingGame, p: &StrategyProfile) -> Self {
        let fmt_row = |r: &[Q]| r.iter().map(rational::format).collect();
        NamedProfile {
            sender: (0..game.n_types()).map(|t| (game.types()[t].clone(), fmt_row(p.sender.row(t)))).collect(),
            receiver: (0..game.n_signals()).map(|s| (game.signals()[s].clone(), fmt_row(p.receiver.row(s)))).collect(),
        }
    }
}
