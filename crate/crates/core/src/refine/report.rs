use serde::Serialize;

use super::beliefs::{br_or_none, equilibrium_undominated_types, rationality_compatible_beliefs_with, uniform_beliefs_with};
use super::checks::Failure;
use super::divine::{DivineSignalTrace, NwbrSignal};
use super::Analysis;
use crate::error::Result;
use crate::game::StrategyProfile;
use crate::rational;

/// Per-signal detail in a [`RefinementReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignalReport {
    pub signal: String,
    pub on_path: bool,
    pub posterior: Option<Vec<String>>,
    pub equilibrium_undominated_types: Vec<String>,
    pub rationality_compatible_beliefs: String,
    pub rationality_compatible_best_responses: Vec<String>,
    pub uniform_beliefs: String,
    pub uniform_best_responses: Vec<String>,
}

/// Every verdict for one profile plus witnesses for the failures.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RefinementReport {
    pub nash: bool,
    pub on_path_strict_receiver: bool,
    pub intuitive_criterion: bool,
    pub rce: bool,
    pub urce: bool,
    pub quasi_strict_urce: bool,
    pub nwbr: bool,
    pub divine: bool,
    pub signals: Vec<SignalReport>,
    pub failures: Vec<Failure>,
    pub divine_trace: Vec<DivineSignalTrace>,
    pub nwbr_survivors: Vec<NwbrSignal>,
}

impl RefinementReport {
    pub fn verdict_names() -> [&'static str; 8] {
        ["nash", "on_path_strict_receiver", "intuitive_criterion", "rce", "urce", "quasi_strict_urce", "nwbr", "divine"]
    }

    /// `(name, verdict)` in the order of [`RefinementReport::verdict_names`].
    pub fn verdicts(&self) -> [(&'static str, bool); 8] {
        [
            ("nash", self.nash),
            ("on_path_strict_receiver", self.on_path_strict_receiver),
            ("intuitive_criterion", self.intuitive_criterion),
            ("rce", self.rce),
            ("urce", self.urce),
            ("quasi_strict_urce", self.quasi_strict_urce),
            ("nwbr", self.nwbr),
            ("divine", self.divine),
        ]
    }
}

impl Analysis<'_> {
    pub fn report(&self, profile: &StrategyProfile) -> Result<RefinementReport> {
        let game = self.game;
        let mut failures = super::checks::nash_failures(game, profile);
        let nash = failures.is_empty();
        let strict = super::checks::on_path_strict_failures(game, profile);
        let on_path_strict_receiver = nash && strict.is_empty();
        failures.extend(strict);

        let (mut ic, mut rce, mut urce, mut quasi, mut nwbr, mut divine) = (false, false, false, false, false, false);
        let (mut divine_trace, mut nwbr_survivors) = (Vec::new(), Vec::new());
        if nash {
            let f = super::checks::intuitive_criterion_failures(game, profile)?;
            ic = f.is_empty();
            failures.extend(f);
            let f = super::checks::rce_failures(game, &self.order, profile)?;
            rce = f.is_empty();
            failures.extend(f);
            let f = super::checks::urce_failures(game, &self.order, profile, false)?;
            urce = f.is_empty();
            failures.extend(f);
            let mut f = super::checks::urce_failures(game, &self.order, profile, true)?;
            f.extend(super::checks::sender_strict_failures(game, profile));
            quasi = urce && on_path_strict_receiver && f.is_empty();
            failures.extend(f.into_iter().filter(|x| x.check == "quasi_strict_urce" && urce));
            let trace = super::divine::divine_trace(game, profile)?;
            divine = trace.passes;
            divine_trace = trace.signals;
            nwbr = super::divine::passes_nwbr(game, profile)?;
            nwbr_survivors = super::divine::nwbr_prune(game, profile)?;
        }

        let mut signals = Vec::new();
        for s in 0..game.n_signals() {
            let on_path = game.is_on_path(&profile.sender, s);
            let posterior = if on_path { Some(game.bayes_posterior(&profile.sender, s)?.probs().iter().map(rational::format).collect()) } else { None };
            let tilde = rationality_compatible_beliefs_with(game, &self.order, profile, s);
            let hat = uniform_beliefs_with(game, &self.order, s);
            let act_names = |v: Vec<usize>| v.into_iter().map(|a| game.actions()[a].clone()).collect::<Vec<_>>();
            signals.push(SignalReport {
                signal: game.signals()[s].clone(),
                on_path,
                posterior,
                equilibrium_undominated_types: equilibrium_undominated_types(game, profile, s).into_iter().map(|t| game.types()[t].clone()).collect(),
                rationality_compatible_beliefs: tilde.describe(game.types()),
                rationality_compatible_best_responses: act_names(br_or_none(game, &tilde, s)?),
                uniform_beliefs: hat.describe(game.types()),
                uniform_best_responses: act_names(br_or_none(game, &hat, s)?),
            });
        }
        Ok(RefinementReport {
            nash,
            on_path_strict_receiver,
            intuitive_criterion: ic,
            rce,
            urce,
            quasi_strict_urce: quasi,
            nwbr,
            divine,
            signals,
            failures,
            divine_trace,
            nwbr_survivors,
        })
    }
}
