//! Simulation scenarios in TOML.
//!
//! ```toml
//! game = "builtin:left_right"
//! mode = "payoff-knowledge"
//! deltas = [0.5]
//! gammas = [0.99]
//! agents = 100000
//!
//! [sender_prior.L]
//! a1 = 1
//! a2 = 10
//! a3 = 1
//!
//! [receiver_prior.t2]
//! L = 2
//! R = 4
//! ```
//!
//! A factor listed under `sender_prior` (per signal, weights over actions) or
//! `receiver_prior` (per type, weights over signals) replaces the default
//! unit-weight factor; outcomes left out or given weight 0 are outside its
//! support.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::SCHEMA_VERSION;
use crate::error::{Error, Result};
use crate::game::SignalingGame;
use crate::learning::{DirichletBelief, PriorMode, RegularPriorSpec, SimParams};

const BUILTIN: &str = "builtin:";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    /// `builtin:<name>` or a path relative to the scenario file.
    pub game: String,
    #[serde(default)]
    pub mode: PriorMode,
    pub deltas: Vec<f64>,
    pub gammas: Vec<f64>,
    #[serde(default = "defaults::agents")]
    pub agents: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<usize>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "defaults::damping")]
    pub damping: f64,
    #[serde(default = "defaults::tolerance")]
    pub tolerance: f64,
    #[serde(default = "defaults::max_iter")]
    pub max_iter: usize,
    #[serde(default = "defaults::mass_tolerance")]
    pub mass_tolerance: f64,
    #[serde(default = "defaults::gittins_tolerance")]
    pub gittins_tolerance: f64,
    #[serde(default = "defaults::off_path_threshold")]
    pub off_path_threshold: f64,
    #[serde(default = "defaults::stability_tolerance")]
    pub stability_tolerance: f64,
    /// Starting profile for a custom start: `builtin:<game>/<profile>` or a path.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub init: Option<String>,
    /// Fixed pure receiver play (signal to action). When present, `simulate`
    /// estimates the sender response to it instead of a steady state.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probe_receiver: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sender_prior: BTreeMap<String, BTreeMap<String, f64>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub receiver_prior: BTreeMap<String, BTreeMap<String, f64>>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

mod defaults {
    use crate::learning::SimParams;

    pub fn agents() -> usize {
        SimParams::default().agents
    }
    pub fn damping() -> f64 {
        SimParams::default().damping
    }
    pub fn tolerance() -> f64 {
        SimParams::default().tolerance
    }
    pub fn max_iter() -> usize {
        SimParams::default().max_iter
    }
    pub fn mass_tolerance() -> f64 {
        SimParams::default().mass_tol
    }
    pub fn gittins_tolerance() -> f64 {
        SimParams::default().gittins_tol
    }
    pub fn off_path_threshold() -> f64 {
        SimParams::default().off_path_threshold
    }
    pub fn stability_tolerance() -> f64 {
        SimParams::default().stability_tol
    }
}

/// Where a scenario's game (or starting profile) comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source<'a> {
    Builtin(&'a str),
    Path(&'a str),
}

fn source(s: &str) -> Source<'_> {
    match s.strip_prefix(BUILTIN) {
        Some(name) => Source::Builtin(name),
        None => Source::Path(s),
    }
}

impl Scenario {
    pub fn parse(src: &str) -> Result<Self> {
        let sc: Scenario = toml::from_str(src).map_err(|e| Error::Scenario(e.to_string().trim_end().to_string()))?;
        if sc.schema_version != SCHEMA_VERSION {
            return Err(Error::Scenario(format!("unsupported schema_version {}", sc.schema_version)));
        }
        sc.params(sc.deltas.first().copied().unwrap_or(0.0), sc.gammas.first().copied().unwrap_or(0.0))
            .validate()
            .map_err(|e| Error::Scenario(e.to_string()))?;
        Ok(sc)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario serializes")
    }

    pub fn game_source(&self) -> Source<'_> {
        source(&self.game)
    }

    pub fn init_source(&self) -> Option<Source<'_>> {
        self.init.as_deref().map(source)
    }

    pub fn params(&self, delta: f64, gamma: f64) -> SimParams {
        SimParams {
            delta,
            gamma,
            agents: self.agents,
            t_max: self.t_max,
            mass_tol: self.mass_tolerance,
            gittins_tol: self.gittins_tolerance,
            seed: self.seed,
            damping: self.damping,
            tolerance: self.tolerance,
            max_iter: self.max_iter,
            off_path_threshold: self.off_path_threshold,
            stability_tol: self.stability_tolerance,
        }
    }

    /// Default unit-weight prior of the chosen mode with the listed factors replaced.
    pub fn prior(&self, game: &SignalingGame) -> Result<RegularPriorSpec> {
        let mut spec = RegularPriorSpec::uniform(game, self.mode);
        for (sig, weights) in &self.sender_prior {
            let s = game.signal_index(sig).ok_or_else(|| Error::Scenario(format!("unknown signal `{sig}`")))?;
            spec.sender[s] = factor(weights, |a| game.action_index(a), "action")?;
        }
        for (ty, weights) in &self.receiver_prior {
            let t = game.type_index(ty).ok_or_else(|| Error::Scenario(format!("unknown type `{ty}`")))?;
            spec.receiver[t] = factor(weights, |s| game.signal_index(s), "signal")?;
        }
        RegularPriorSpec::new(game, self.mode, spec.sender, spec.receiver).map_err(|e| Error::Scenario(e.to_string()))
    }

    /// The probe as receiver rows, if any. Every signal must be listed.
    pub fn probe(&self, game: &SignalingGame) -> Result<Option<Vec<Vec<f64>>>> {
        let Some(map) = &self.probe_receiver else { return Ok(None) };
        let mut rows = Vec::with_capacity(game.n_signals());
        for sig in game.signals() {
            let name = map.get(sig).ok_or_else(|| Error::Scenario(format!("probe_receiver misses signal `{sig}`")))?;
            let a = game.action_index(name).ok_or_else(|| Error::Scenario(format!("unknown action `{name}`")))?;
            let mut row = vec![0.0; game.n_actions()];
            row[a] = 1.0;
            rows.push(row);
        }
        if let Some(extra) = map.keys().find(|k| game.signal_index(k).is_none()) {
            return Err(Error::Scenario(format!("unknown signal `{extra}`")));
        }
        Ok(Some(rows))
    }
}

fn factor(weights: &BTreeMap<String, f64>, index: impl Fn(&str) -> Option<usize>, what: &str) -> Result<DirichletBelief> {
    let mut pairs = Vec::new();
    for (name, &w) in weights {
        let i = index(name).ok_or_else(|| Error::Scenario(format!("unknown {what} `{name}`")))?;
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::Scenario(format!("weight for `{name}` must be non-negative")));
        }
        if w > 0.0 {
            pairs.push((i, w));
        }
    }
    pairs.sort_by_key(|p| p.0);
    DirichletBelief::new(pairs.iter().map(|p| p.0).collect(), pairs.iter().map(|p| p.1).collect())
        .map_err(|e| Error::Scenario(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite;

    const SRC: &str = r#"
game = "builtin:left_right"
deltas = [0.5]
gammas = [0.9, 0.99]
agents = 500

[sender_prior.L]
a1 = 1
a2 = 10
a3 = 1

[receiver_prior.t2]
L = 2
R = 0.25
"#;

    #[test]
    fn parses_and_builds_prior() {
        let sc = Scenario::parse(SRC).unwrap();
        assert_eq!(sc.game_source(), Source::Builtin("left_right"));
        assert_eq!(sc.mode, PriorMode::PayoffKnowledge);
        let g = suite::left_right_game();
        let prior = sc.prior(&g).unwrap();
        assert_eq!(prior.sender[0].weights(), &[1.0, 10.0, 1.0]);
        assert_eq!(prior.sender[1].support(), &[1, 2]);
        assert_eq!(prior.receiver[1].weights(), &[2.0, 0.25]);
        assert_eq!(sc.params(0.5, 0.9).agents, 500);
    }

    #[test]
    fn round_trip() {
        let sc = Scenario::parse(SRC).unwrap();
        assert_eq!(Scenario::parse(&sc.to_toml()).unwrap(), sc);
    }

    #[test]
    fn rejects_bad_scenarios() {
        assert!(Scenario::parse("game = 1").is_err());
        assert!(Scenario::parse("game = \"x\"\ndeltas = [0.5]\ngammas = [1.5]").is_err());
        assert!(Scenario::parse("game = \"x\"\ndeltas = []\ngammas = []\nbogus = 1").is_err());
        let sc = Scenario::parse("game = \"builtin:left_right\"\ndeltas = [0.5]\ngammas = [0.5]\n[sender_prior.Q]\na1 = 1").unwrap();
        assert!(matches!(sc.prior(&suite::left_right_game()), Err(Error::Scenario(_))));
        let sc = Scenario::parse("game = \"builtin:left_right\"\ndeltas = [0.5]\ngammas = [0.5]\n[sender_prior.L]\na1 = 1").unwrap();
        assert!(sc.prior(&suite::left_right_game()).is_err());
    }

    #[test]
    fn probe_rows() {
        let src = "game = \"builtin:entry\"\nmode = \"full-support\"\ndeltas = [0.5]\ngammas = [0.5]\n[probe_receiver]\nIn = \"Down\"\nOut = \"Up\"\n";
        let sc = Scenario::parse(src).unwrap();
        let g = suite::entry_game();
        assert_eq!(sc.probe(&g).unwrap().unwrap(), vec![vec![0.0, 1.0, 0.0], vec![1.0, 0.0, 0.0]]);
    }
}
