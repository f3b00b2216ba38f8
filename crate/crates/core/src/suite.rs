//! Bundled example games with their profiles and expected verdicts.

use serde::Serialize;

use crate::compat::{compatibility_order, more_compatible};
use crate::enumerate::strict_pure_nash_equilibria;
use crate::error::Result;
use crate::format::scenario::Scenario;
use crate::format::{parse_game, parse_profile};
use crate::game::{SignalingGame, StrategyProfile};
use crate::refine::{br_to_belief_set, divine_trace, Analysis};

/// A verdict that can be checked for a named profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Nash,
    OnPathStrictReceiver,
    IntuitiveCriterion,
    Rce,
    Urce,
    QuasiStrictUrce,
    Divine,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::Nash => "nash",
            Check::OnPathStrictReceiver => "on_path_strict_receiver",
            Check::IntuitiveCriterion => "intuitive_criterion",
            Check::Rce => "rce",
            Check::Urce => "urce",
            Check::QuasiStrictUrce => "quasi_strict_urce",
            Check::Divine => "divine",
        }
    }
}

/// One expected fact about a bundled example. Names refer to the game's
/// own type, signal and action names.
#[derive(Debug, Clone)]
pub enum Expectation {
    Verdict { profile: &'static str, check: Check, expected: bool },
    /// The complete restricted (or unrestricted) order, as `(signal, more, less)`.
    Order { restricted: bool, edges: Vec<(&'static str, &'static str, &'static str)> },
    /// The restricted order at one signal, as `(more, less)`.
    OrderAt { signal: &'static str, edges: Vec<(&'static str, &'static str)> },
    /// A single pair of the order.
    Pair { restricted: bool, signal: &'static str, more: &'static str, less: &'static str, expected: bool },
    UndominatedActions { signal: &'static str, actions: Vec<&'static str> },
    UniformBestResponses { signal: &'static str, actions: Vec<&'static str> },
    /// Actions deleted per round of the divine restriction.
    DivineDeletions { profile: &'static str, signal: &'static str, rounds: Vec<Vec<&'static str>> },
    /// Sender maps (signal per type) of all RCE among strict pure equilibria.
    StrictRceOutcomes { outcomes: Vec<Vec<&'static str>> },
    /// Every strict pure equilibrium sends these signals and plays `action` after `signal`.
    AllEquilibria { signals: Vec<&'static str>, signal: &'static str, action: &'static str },
}

pub struct BundledExample {
    pub name: &'static str,
    pub description: &'static str,
    pub game: SignalingGame,
    pub profiles: Vec<(&'static str, StrategyProfile)>,
    pub expectations: Vec<Expectation>,
}

/// Outcome of checking one expectation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub example: String,
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

macro_rules! data {
    ($f:literal) => {
        include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/data/", $f))
    };
}

const GAMES: &[(&str, &str, &str)] = &[
    ("education", "worker education choice with wage responses", data!("education.game")),
    ("entry", "entry with an outside option (reconstructed receiver payoffs)", data!("entry.game")),
    ("left_right", "two types, two signals, a conditionally dominated action after R", data!("left_right.game")),
    ("ic_gap", "pooling that passes the Intuitive Criterion but not RCE", data!("ic_gap.game")),
    ("three_signal", "RCE that is not divine because of a third signal", data!("three_signal.game")),
    ("iterated_divinity", "RCE ruled out by iterating the divine restriction", data!("iterated_divinity.game")),
];

const PROFILES: &[(&str, &str, &str)] = &[
    ("education", "pool_c", data!("education.pool_c.profile")),
    ("education", "pool_d", data!("education.pool_d.profile")),
    ("entry", "pool_in", data!("entry.pool_in.profile")),
    ("entry", "pool_out", data!("entry.pool_out.profile")),
    ("left_right", "pbe_a2", data!("left_right.pbe_a2.profile")),
    ("left_right", "pbe_a3", data!("left_right.pbe_a3.profile")),
    ("ic_gap", "pool_s1", data!("ic_gap.pool_s1.profile")),
    ("three_signal", "pool_s1", data!("three_signal.pool_s1.profile")),
    ("iterated_divinity", "pool_s1", data!("iterated_divinity.pool_s1.profile")),
];

const SCENARIOS: &[(&str, &str)] = &[
    ("entry_reversal", data!("scenarios/entry_reversal.toml")),
    ("left_right_quarter", data!("scenarios/left_right_quarter.toml")),
    ("left_right_four", data!("scenarios/left_right_four.toml")),
];

/// Bundled game text by name.
pub fn game_source(name: &str) -> Option<&'static str> {
    GAMES.iter().find(|g| g.0 == name).map(|g| g.2)
}

pub fn game_names() -> Vec<&'static str> {
    GAMES.iter().map(|g| g.0).collect()
}

/// Parses a bundled game. Panics on unknown names; the data is compiled in.
pub fn game(name: &str) -> SignalingGame {
    parse_game(game_source(name).unwrap_or_else(|| panic!("no bundled game `{name}`"))).expect("bundled game parses")
}

pub fn profile_source(game_name: &str, profile_name: &str) -> Option<&'static str> {
    PROFILES.iter().find(|p| p.0 == game_name && p.1 == profile_name).map(|p| p.2)
}

/// `(game, profile)` names of the bundled profiles.
pub fn profile_names() -> Vec<(&'static str, &'static str)> {
    PROFILES.iter().map(|p| (p.0, p.1)).collect()
}

pub fn profile(game_name: &str, profile_name: &str) -> StrategyProfile {
    let src = profile_source(game_name, profile_name)
        .unwrap_or_else(|| panic!("no bundled profile `{game_name}/{profile_name}`"));
    parse_profile(src, &game(game_name)).expect("bundled profile parses")
}

pub fn scenario_source(name: &str) -> Option<&'static str> {
    SCENARIOS.iter().find(|s| s.0 == name).map(|s| s.1)
}

pub fn scenario_names() -> Vec<&'static str> {
    SCENARIOS.iter().map(|s| s.0).collect()
}

pub fn scenario(name: &str) -> Scenario {
    Scenario::parse(scenario_source(name).unwrap_or_else(|| panic!("no bundled scenario `{name}`"))).expect("bundled scenario parses")
}

pub fn education_game() -> SignalingGame {
    game("education")
}
pub fn entry_game() -> SignalingGame {
    game("entry")
}
pub fn left_right_game() -> SignalingGame {
    game("left_right")
}
pub fn ic_gap_game() -> SignalingGame {
    game("ic_gap")
}
pub fn three_signal_game() -> SignalingGame {
    game("three_signal")
}
pub fn iterated_game() -> SignalingGame {
    game("iterated_divinity")
}
pub fn education_pool_c(_: &SignalingGame) -> StrategyProfile {
    profile("education", "pool_c")
}

fn expectations(name: &str) -> Vec<Expectation> {
    use Check::*;
    use Expectation::*;
    let v = |profile, check, expected| Verdict { profile, check, expected };
    match name {
        "education" => vec![
            Order { restricted: true, edges: vec![("N", "L", "H"), ("D", "H", "L")] },
            Pair { restricted: true, signal: "C", more: "H", less: "L", expected: false },
            Pair { restricted: true, signal: "C", more: "L", less: "H", expected: false },
            UniformBestResponses { signal: "N", actions: vec!["low", "med"] },
            v("pool_c", Urce, true),
            v("pool_c", QuasiStrictUrce, true),
            v("pool_c", Nash, true),
            v("pool_d", Rce, true),
            v("pool_d", Urce, false),
        ],
        "entry" => vec![
            UndominatedActions { signal: "In", actions: vec!["Up", "Down"] },
            Pair { restricted: true, signal: "In", more: "strong", less: "weak", expected: true },
            Pair { restricted: false, signal: "In", more: "strong", less: "weak", expected: false },
            Pair { restricted: false, signal: "In", more: "weak", less: "strong", expected: false },
            StrictRceOutcomes { outcomes: vec![vec!["In", "In"]] },
            v("pool_in", Rce, true),
            v("pool_in", QuasiStrictUrce, true),
            v("pool_in", Divine, true),
            v("pool_out", IntuitiveCriterion, true),
            v("pool_out", Rce, false),
        ],
        "left_right" => vec![
            UndominatedActions { signal: "R", actions: vec!["a2", "a3"] },
            UndominatedActions { signal: "L", actions: vec!["a1", "a2"] },
            Pair { restricted: true, signal: "R", more: "t2", less: "t1", expected: true },
            AllEquilibria { signals: vec!["L", "L"], signal: "L", action: "a2" },
            v("pbe_a2", Rce, true),
            v("pbe_a3", Rce, true),
            v("pbe_a2", OnPathStrictReceiver, true),
        ],
        "ic_gap" => vec![
            Pair { restricted: true, signal: "s2", more: "t1", less: "t2", expected: true },
            v("pool_s1", IntuitiveCriterion, true),
            v("pool_s1", Rce, false),
        ],
        "three_signal" => vec![v("pool_s1", Nash, true), v("pool_s1", Rce, true), v("pool_s1", Divine, false)],
        "iterated_divinity" => vec![
            OrderAt { signal: "s2", edges: vec![("t2", "t1")] },
            v("pool_s1", Rce, true),
            v("pool_s1", Divine, false),
            DivineDeletions { profile: "pool_s1", signal: "s2", rounds: vec![vec!["a1"], vec!["a2", "a4"]] },
        ],
        _ => Vec::new(),
    }
}

/// All bundled examples, in a fixed order.
pub fn examples() -> Vec<BundledExample> {
    GAMES
        .iter()
        .map(|&(name, description, _)| {
            let g = game(name);
            let profiles = PROFILES.iter().filter(|p| p.0 == name).map(|p| (p.1, profile(name, p.1))).collect();
            BundledExample { name, description, game: g, profiles, expectations: expectations(name) }
        })
        .collect()
}

fn idx(list: &[String], name: &str) -> usize {
    list.iter().position(|n| n == name).unwrap_or_else(|| panic!("unknown name `{name}`"))
}

fn show(v: &[String]) -> String {
    format!("{{{}}}", v.join(", "))
}

impl BundledExample {
    fn profile(&self, name: &str) -> &StrategyProfile {
        &self.profiles.iter().find(|p| p.0 == name).unwrap_or_else(|| panic!("no profile `{name}`")).1
    }

    /// Checks every expectation.
    pub fn verify(&self) -> Result<Vec<CheckOutcome>> {
        let g = &self.game;
        let analysis = Analysis::new(g)?;
        let act_names = |v: Vec<usize>| v.into_iter().map(|a| g.actions()[a].clone()).collect::<Vec<_>>();
        let owned = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let mut out = Vec::new();
        let mut push = |check: String, expected: String, actual: String| {
            out.push(CheckOutcome { example: self.name.to_string(), pass: expected == actual, check, expected, actual });
        };
        for e in &self.expectations {
            match e {
                Expectation::Verdict { profile, check, expected } => {
                    let p = self.profile(profile);
                    let actual = match check {
                        Check::Nash => analysis.is_nash(p),
                        Check::OnPathStrictReceiver => analysis.on_path_strict_for_receiver(p),
                        Check::IntuitiveCriterion => analysis.passes_intuitive_criterion(p)?,
                        Check::Rce => analysis.is_rce(p)?,
                        Check::Urce => analysis.is_urce(p)?,
                        Check::QuasiStrictUrce => analysis.is_quasi_strict_urce(p)?,
                        Check::Divine => crate::refine::is_divine(g, p)?,
                    };
                    push(format!("{} {}", check.name(), profile), expected.to_string(), actual.to_string());
                }
                Expectation::Order { restricted, edges } => {
                    let order = if *restricted { analysis.order().clone() } else { compatibility_order(g, false)? };
                    let actual: Vec<String> = order.edges(g).into_iter().map(|e| format!("{}>{}@{}", e.more, e.less, e.signal)).collect();
                    let mut expected: Vec<(usize, usize, usize)> =
                        edges.iter().map(|(s, m, l)| (idx(g.signals(), s), idx(g.types(), m), idx(g.types(), l))).collect();
                    expected.sort();
                    let expected: Vec<String> = expected.into_iter().map(|(s, m, l)| format!("{}>{}@{}", g.types()[m], g.types()[l], g.signals()[s])).collect();
                    let label = if *restricted { "order" } else { "unrestricted order" };
                    push(label.into(), show(&expected), show(&actual));
                }
                Expectation::OrderAt { signal, edges } => {
                    let s = idx(g.signals(), signal);
                    let actual: Vec<String> = analysis.order().pairs_at(s).into_iter().map(|(m, l)| format!("{}>{}", g.types()[m], g.types()[l])).collect();
                    let expected: Vec<String> = edges.iter().map(|(m, l)| format!("{m}>{l}")).collect();
                    push(format!("order at {signal}"), show(&expected), show(&actual));
                }
                Expectation::Pair { restricted, signal, more, less, expected } => {
                    let actual = more_compatible(g, idx(g.signals(), signal), idx(g.types(), more), idx(g.types(), less), *restricted)?;
                    let label = if *restricted { "" } else { " unrestricted" };
                    push(format!("{more}>{less}@{signal}{label}"), expected.to_string(), actual.to_string());
                }
                Expectation::UndominatedActions { signal, actions } => {
                    let actual = act_names(g.conditionally_undominated_actions(idx(g.signals(), signal)).to_vec());
                    push(format!("undominated actions after {signal}"), show(&owned(actions)), show(&actual));
                }
                Expectation::UniformBestResponses { signal, actions } => {
                    let s = idx(g.signals(), signal);
                    let actual = act_names(br_to_belief_set(g, &analysis.uniform_beliefs(s), s)?);
                    push(format!("best responses to uniform beliefs after {signal}"), show(&owned(actions)), show(&actual));
                }
                Expectation::DivineDeletions { profile, signal, rounds } => {
                    let trace = divine_trace(g, self.profile(profile))?;
                    let sig = trace.signals.iter().find(|t| t.signal == *signal);
                    let actual: Vec<String> = sig.map(|t| t.rounds.iter().take(rounds.len()).map(|r| show(&r.deleted_actions)).collect()).unwrap_or_default();
                    let expected: Vec<String> = rounds.iter().map(|r| show(&owned(r))).collect();
                    push(format!("divine deletions after {signal}"), expected.join(" "), actual.join(" "));
                }
                Expectation::StrictRceOutcomes { outcomes } => {
                    let mut actual = Vec::new();
                    for p in strict_pure_nash_equilibria(g) {
                        if analysis.is_rce(&p)? {
                            let sigs: Vec<String> = (0..g.n_types()).map(|t| g.signals()[p.sender.pure_signal(t).expect("pure")].clone()).collect();
                            if !actual.contains(&show(&sigs)) {
                                actual.push(show(&sigs));
                            }
                        }
                    }
                    let expected: Vec<String> = outcomes.iter().map(|o| show(&owned(o))).collect();
                    push("RCE outcomes among strict pure equilibria".into(), expected.join(" "), actual.join(" "));
                }
                Expectation::AllEquilibria { signals, signal, action } => {
                    let s = idx(g.signals(), signal);
                    let a = idx(g.actions(), action);
                    let want: Vec<usize> = signals.iter().map(|x| idx(g.signals(), x)).collect();
                    let eqs = crate::enumerate::pure_nash_equilibria(g);
                    let ok = !eqs.is_empty()
                        && eqs.iter().all(|p| (0..g.n_types()).all(|t| p.sender.pure_signal(t) == Some(want[t])) && p.receiver.support(s) == vec![a]);
                    push(format!("every pure equilibrium sends {} and plays {action} after {signal}", show(&owned(signals))), "true".into(), ok.to_string());
                }
            }
        }
        Ok(out)
    }
}

/// Runs every bundled expectation.
pub fn verify_all() -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    for ex in examples() {
        out.extend(ex.verify()?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::write_game;

    #[test]
    fn bundled_games_round_trip() {
        for name in game_names() {
            let g = game(name);
            assert_eq!(parse_game(&write_game(&g)).unwrap(), g, "{name}");
        }
    }

    #[test]
    fn every_expectation_holds() {
        for outcome in verify_all().unwrap() {
            assert!(outcome.pass, "{outcome:?}");
        }
    }

    #[test]
    fn bundled_scenarios_resolve() {
        for name in scenario_names() {
            let sc = scenario(name);
            let crate::format::scenario::Source::Builtin(g) = sc.game_source() else { panic!("{name}") };
            let game = game(g);
            sc.prior(&game).unwrap();
            sc.probe(&game).unwrap();
        }
    }
}
