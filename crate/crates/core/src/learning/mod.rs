//! Steady-state learning: Dirichlet-belief agents in a large population,
//! Gittins-index experimentation by senders, myopic receivers, aggregate
//! responses estimated by simulating lifetimes, and damped fixed-point
//! iteration for steady states.
//!
//! Everything here is `f64`. Ages are weighted geometrically: period `t` of
//! a simulated lifetime carries weight `(1−γ)γ^t`, renormalised over the
//! simulated horizon.

mod dirichlet;
mod gittins;
mod model;
mod prior;
mod steady;

use serde::{Deserialize, Serialize};

pub use dirichlet::DirichletBelief;
pub use gittins::{gittins_index, gittins_index_at_horizon, GittinsCache, GittinsConfig};
pub use model::{aggregate_receiver_response, aggregate_sender_response, LearningModel};
pub use prior::{PriorMode, RegularPriorSpec};
pub use steady::{patient_stability_sweep, steady_state, StartKind, SweepChain, SweepReport, Trend};

use crate::error::{Error, Result};
use crate::game::{SignalingGame, StrategyProfile};
use crate::rational;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub delta: f64,
    pub gamma: f64,
    /// Simulated lifetimes per estimate (per type for senders).
    pub agents: usize,
    /// Lifetime cap; derived from `mass_tol` when absent.
    pub t_max: Option<usize>,
    /// Bound on the demographic mass `γ^T_max` beyond the cap.
    pub mass_tol: f64,
    pub gittins_tol: f64,
    pub seed: u64,
    pub damping: f64,
    pub tolerance: f64,
    pub max_iter: usize,
    /// Signals reached with lower aggregate probability count as off path.
    pub off_path_threshold: f64,
    /// Largest on-path change between the last two `γ` points of a stable sweep chain.
    pub stability_tol: f64,
}

impl Default for SimParams {
    fn default() -> Self {
        SimParams {
            delta: 0.9,
            gamma: 0.9,
            agents: 10_000,
            t_max: None,
            mass_tol: 1e-4,
            gittins_tol: 1e-6,
            seed: 0,
            damping: 0.5,
            tolerance: 1e-3,
            max_iter: 100,
            off_path_threshold: 1e-3,
            stability_tol: 0.05,
        }
    }
}

impl SimParams {
    pub fn with(delta: f64, gamma: f64, agents: usize, seed: u64) -> Self {
        SimParams { delta, gamma, agents, seed, ..Self::default() }
    }

    /// Effective discount `δγ`.
    pub fn beta(&self) -> f64 {
        self.delta * self.gamma
    }

    pub fn validate(&self) -> Result<()> {
        if !(0.0..1.0).contains(&self.delta) || !(0.0..1.0).contains(&self.gamma) {
            return Err(Error::Params(format!("need 0 ≤ δ, γ < 1, got δ = {}, γ = {}", self.delta, self.gamma)));
        }
        if self.agents == 0 {
            return Err(Error::Params("agents must be positive".into()));
        }
        if !(self.damping > 0.0 && self.damping <= 1.0) {
            return Err(Error::Params("damping must lie in (0, 1]".into()));
        }
        if !(self.mass_tol > 0.0 && self.gittins_tol > 0.0 && self.tolerance > 0.0) {
            return Err(Error::Params("tolerances must be positive".into()));
        }
        self.horizon().map(|_| ())
    }

    pub fn horizon(&self) -> Result<usize> {
        let g = self.gamma;
        match self.t_max {
            Some(0) => Err(Error::Params("t_max must be positive".into())),
            Some(t) => {
                let tail = g.powi(t as i32);
                if tail > self.mass_tol {
                    return Err(Error::Params(format!("t_max = {t} leaves demographic mass {tail:.3e} above {}", self.mass_tol)));
                }
                Ok(t)
            }
            None => {
                let mut t = 1usize;
                let mut tail = g;
                while tail > self.mass_tol {
                    tail *= g;
                    t += 1;
                }
                Ok(t)
            }
        }
    }

    /// Normalised age weights `(1−γ)γ^t / (1 − γ^T)` and the truncated mass `γ^T`.
    pub fn age_weights(&self) -> Result<(Vec<f64>, f64)> {
        let t_max = self.horizon()?;
        let g = self.gamma;
        let tail = g.powi(t_max as i32);
        let mass = 1.0 - tail;
        let mut w = Vec::with_capacity(t_max);
        let mut gt = 1.0;
        for _ in 0..t_max {
            w.push((1.0 - g) * gt / mass);
            gt *= g;
        }
        Ok((w, tail))
    }
}

/// Behavior strategies in floating point: `sender[θ][s]`, `receiver[s][a]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedProfile {
    pub sender: Vec<Vec<f64>>,
    pub receiver: Vec<Vec<f64>>,
}

impl MixedProfile {
    pub fn new(game: &SignalingGame, sender: Vec<Vec<f64>>, receiver: Vec<Vec<f64>>) -> Result<Self> {
        check_rows(&sender, game.n_types(), game.n_signals())?;
        check_rows(&receiver, game.n_signals(), game.n_actions())?;
        Ok(MixedProfile { sender, receiver })
    }

    pub fn from_exact(profile: &StrategyProfile) -> Self {
        let conv = |rows: &[Vec<rational::Q>]| rows.iter().map(|r| r.iter().map(rational::to_f64).collect()).collect();
        MixedProfile { sender: conv(profile.sender.rows()), receiver: conv(profile.receiver.rows()) }
    }

    /// Probability that signal `s` is sent, under prior `lambda`.
    pub fn signal_frequency(&self, lambda: &[f64], s: usize) -> f64 {
        self.sender.iter().zip(lambda).map(|(row, l)| l * row[s]).sum()
    }

    pub fn on_path_signals(&self, lambda: &[f64], threshold: f64) -> Vec<usize> {
        let n = self.sender.first().map_or(0, Vec::len);
        (0..n).filter(|&s| self.signal_frequency(lambda, s) > threshold).collect()
    }

    pub fn distance(&self, other: &MixedProfile) -> f64 {
        sup_distance(&self.sender, &other.sender).max(sup_distance(&self.receiver, &other.receiver))
    }

    /// Sup-distance over sender rows and the receiver rows of `signals`.
    pub fn on_path_distance(&self, other: &MixedProfile, signals: &[usize]) -> f64 {
        let r = signals
            .iter()
            .flat_map(|&s| self.receiver[s].iter().zip(&other.receiver[s]).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        sup_distance(&self.sender, &other.sender).max(r)
    }
}

pub(crate) fn sup_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    a.iter().zip(b).flat_map(|(x, y)| x.iter().zip(y).map(|(p, q)| (p - q).abs())).fold(0.0, f64::max)
}

fn check_rows(rows: &[Vec<f64>], n: usize, m: usize) -> Result<()> {
    if rows.len() != n {
        return Err(Error::Dimension { expected: n, got: rows.len() });
    }
    for r in rows {
        if r.len() != m {
            return Err(Error::Dimension { expected: m, got: r.len() });
        }
        if r.iter().any(|p| !(p.is_finite() && *p >= 0.0)) || (r.iter().sum::<f64>() - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidStrategy("rows must be probability vectors".into()));
        }
    }
    Ok(())
}

/// Monte-Carlo estimate of an aggregate response: `rows[i][j]` is the
/// population frequency, `se[i][j]` its standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateEstimate {
    pub rows: Vec<Vec<f64>>,
    pub se: Vec<Vec<f64>>,
    pub agents: usize,
    pub horizon: usize,
    /// Demographic mass covered by the simulated ages, `1 − γ^T`.
    pub weight_mass: f64,
    pub truncated_mass: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Sender,
    Receiver,
}

/// One simulated lifetime. Sender entries are `(signal sent, action seen)`;
/// receiver entries are `(type met, signal seen)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentHistory {
    pub role: Role,
    #[serde(rename = "type", skip_serializing_if = "Option::is_none")]
    pub sender_type: Option<usize>,
    pub entries: Vec<(usize, usize)>,
}

impl AgentHistory {
    /// Checks entries against the prior supports.
    pub fn validate(&self, prior: &RegularPriorSpec) -> Result<()> {
        let ok = match self.role {
            Role::Sender => self.entries.iter().all(|&(s, a)| prior.sender.get(s).is_some_and(|b| b.contains(a))),
            Role::Receiver => self.entries.iter().all(|&(t, s)| prior.receiver.get(t).is_some_and(|b| b.contains(s))),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Contract("history leaves the prior support".into()))
        }
    }
}

/// Outcome of one steady-state search.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SteadyStateResult {
    pub start: StartKind,
    pub delta: f64,
    pub gamma: f64,
    pub profile: MixedProfile,
    pub sender_se: Vec<Vec<f64>>,
    pub receiver_se: Vec<Vec<f64>>,
    /// `max(|π₁ − R₁[π₂]|, |π₂ − R₂[π₁]|)` at the returned profile.
    pub residual: f64,
    pub converged: bool,
    pub iterations: usize,
    /// Sup-norm change per iteration.
    pub trajectory: Vec<f64>,
}
