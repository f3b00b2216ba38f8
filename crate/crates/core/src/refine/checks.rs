use num_traits::{One, Signed};
use serde::Serialize;

use super::beliefs::{br_or_none, equilibrium_undominated_types, rationality_compatible_beliefs_with, uniform_beliefs_with};
use crate::compat::CompatibilityOrder;
use crate::error::Result;
use crate::game::{SignalingGame, StrategyProfile};
use crate::polytope::BeliefPolytope;
use crate::rational::{self, Q};

/// A concrete reason a profile fails a test.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: &'static str,
    pub signal: Option<String>,
    #[serde(rename = "type")]
    pub type_: Option<String>,
    pub action: Option<String>,
    pub detail: String,
}

impl Failure {
    fn new(check: &'static str, detail: String) -> Self {
        Failure { check, signal: None, type_: None, action: None, detail }
    }
    fn signal(mut self, g: &SignalingGame, s: usize) -> Self {
        self.signal = Some(g.signals()[s].clone());
        self
    }
    fn ty(mut self, g: &SignalingGame, t: usize) -> Self {
        self.type_ = Some(g.types()[t].clone());
        self
    }
    fn action(mut self, g: &SignalingGame, a: usize) -> Self {
        self.action = Some(g.actions()[a].clone());
        self
    }
}

pub(crate) fn nash_failures(game: &SignalingGame, p: &StrategyProfile) -> Vec<Failure> {
    let mut out = Vec::new();
    for t in 0..game.n_types() {
        let values: Vec<Q> = (0..game.n_signals()).map(|s| game.signal_value(t, s, &p.receiver)).collect();
        let best = rational::max(&values).expect("signals");
        for s in 0..game.n_signals() {
            if p.sender.prob(t, s).is_positive() && values[s] < best {
                let better = values.iter().position(|v| *v == best).expect("argmax");
                out.push(
                    Failure::new(
                        "nash",
                        format!("sends {} for {} but {} pays {}", game.signals()[s], rational::format(&values[s]), game.signals()[better], rational::format(&best)),
                    )
                    .signal(game, s)
                    .ty(game, t),
                );
            }
        }
    }
    for s in (0..game.n_signals()).filter(|&s| game.is_on_path(&p.sender, s)) {
        let post = game.bayes_posterior(&p.sender, s).expect("on path");
        let br = game.best_responses_to_belief(&post, s);
        for a in p.receiver.support(s) {
            if !br.contains(&a) {
                out.push(Failure::new("nash", "receiver action is not a best response to the posterior".into()).signal(game, s).action(game, a));
            }
        }
    }
    out
}

pub(crate) fn on_path_strict_failures(game: &SignalingGame, p: &StrategyProfile) -> Vec<Failure> {
    let mut out = Vec::new();
    for s in (0..game.n_signals()).filter(|&s| game.is_on_path(&p.sender, s)) {
        let row = p.receiver.row(s);
        let Some(a) = row.iter().position(|x| x.is_one()) else {
            out.push(Failure::new("on_path_strict_receiver", "receiver mixes after an on-path signal".into()).signal(game, s));
            continue;
        };
        let post = game.bayes_posterior(&p.sender, s).expect("on path");
        if game.best_responses_to_belief(&post, s) != vec![a] {
            out.push(Failure::new("on_path_strict_receiver", "action is not the unique best response to the posterior".into()).signal(game, s).action(game, a));
        }
    }
    out
}

/// Assumes a Nash profile.
pub(crate) fn intuitive_criterion_failures(game: &SignalingGame, p: &StrategyProfile) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    for s in (0..game.n_signals()).filter(|&s| !game.is_on_path(&p.sender, s)) {
        let j = equilibrium_undominated_types(game, p, s);
        if j.is_empty() {
            continue;
        }
        let br = br_or_none(game, &BeliefPolytope::on_support(game.n_types(), &j), s)?;
        for t in 0..game.n_types() {
            let worst = rational::min(br.iter().map(|&a| game.u1(t, s, a))).expect("non-empty");
            let v = game.equilibrium_value(p, t);
            if v < worst {
                out.push(
                    Failure::new(
                        "intuitive_criterion",
                        format!("every response to plausible types pays at least {} > equilibrium {}", rational::format(&worst), rational::format(&v)),
                    )
                    .signal(game, s)
                    .ty(game, t),
                );
            }
        }
    }
    Ok(out)
}

/// Receiver play outside `Δ(BR(P̃(s), s))`, at every signal. Assumes a Nash profile.
pub(crate) fn rce_failures(game: &SignalingGame, order: &CompatibilityOrder, p: &StrategyProfile) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    for s in 0..game.n_signals() {
        let poly = rationality_compatible_beliefs_with(game, order, p, s);
        let br = br_or_none(game, &poly, s)?;
        for a in p.receiver.support(s) {
            if !br.contains(&a) {
                out.push(Failure::new("rce", "action does not best respond to any rationality-compatible belief".into()).signal(game, s).action(game, a));
            }
        }
    }
    Ok(out)
}

/// Off-path deterrence by every best response to `P̂(s)`; `strict` asks for strict deterrence.
/// Assumes a Nash profile.
pub(crate) fn urce_failures(game: &SignalingGame, order: &CompatibilityOrder, p: &StrategyProfile, strict: bool) -> Result<Vec<Failure>> {
    let mut out = Vec::new();
    let check = if strict { "quasi_strict_urce" } else { "urce" };
    for s in (0..game.n_signals()).filter(|&s| !game.is_on_path(&p.sender, s)) {
        let br = br_or_none(game, &uniform_beliefs_with(game, order, s), s)?;
        for t in 0..game.n_types() {
            let v = game.equilibrium_value(p, t);
            for &a in &br {
                let dev = game.u1(t, s, a);
                if dev > &v || (strict && dev == &v) {
                    out.push(
                        Failure::new(check, format!("deviation pays {} against equilibrium {}", rational::format(dev), rational::format(&v)))
                            .signal(game, s)
                            .ty(game, t)
                            .action(game, a),
                    );
                }
            }
        }
    }
    Ok(out)
}

/// Each type has a pure equilibrium signal that beats every other signal strictly.
pub(crate) fn sender_strict_failures(game: &SignalingGame, p: &StrategyProfile) -> Vec<Failure> {
    let mut out = Vec::new();
    for t in 0..game.n_types() {
        let Some(s) = p.sender.pure_signal(t) else {
            out.push(Failure::new("quasi_strict_urce", "sender type mixes".into()).ty(game, t));
            continue;
        };
        let v = game.signal_value(t, s, &p.receiver);
        for o in (0..game.n_signals()).filter(|&o| o != s) {
            if game.signal_value(t, o, &p.receiver) >= v {
                out.push(Failure::new("quasi_strict_urce", "sender is not strictly better off at its equilibrium signal".into()).ty(game, t).signal(game, o));
            }
        }
    }
    out
}

