use serde::{Deserialize, Serialize};

use super::model::LearningModel;
use super::{sup_distance, MixedProfile, RegularPriorSpec, SimParams, SteadyStateResult};
use crate::error::{Error, Result};
use crate::format::SCHEMA_VERSION;
use crate::game::SignalingGame;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StartKind {
    Uniform,
    Myopic,
    Custom,
}

impl StartKind {
    pub fn name(self) -> &'static str {
        match self {
            StartKind::Uniform => "uniform",
            StartKind::Myopic => "myopic",
            StartKind::Custom => "custom",
        }
    }
}

fn mix(old: &[Vec<f64>], new: &[Vec<f64>], w: f64) -> Vec<Vec<f64>> {
    old.iter().zip(new).map(|(a, b)| a.iter().zip(b).map(|(x, y)| (1.0 - w) * x + w * y).collect()).collect()
}

impl LearningModel<'_> {
    /// Damped alternating iteration from `init`. Non-convergence is reported,
    /// not raised.
    pub fn steady_state(&self, params: &SimParams, init: &MixedProfile, start: StartKind) -> Result<SteadyStateResult> {
        params.validate()?;
        let w = params.damping;
        let mut pi = init.clone();
        let mut trajectory = Vec::new();
        let mut converged = false;
        for _ in 0..params.max_iter {
            let r1 = self.aggregate_sender_response(params, &pi.receiver)?;
            let sender = mix(&pi.sender, &r1.rows, w);
            let r2 = self.aggregate_receiver_response(params, &sender)?;
            let receiver = mix(&pi.receiver, &r2.rows, w);
            let next = MixedProfile { sender, receiver };
            let change = next.distance(&pi);
            pi = next;
            trajectory.push(change);
            if change < params.tolerance {
                converged = true;
                break;
            }
        }
        let r1 = self.aggregate_sender_response(params, &pi.receiver)?;
        let r2 = self.aggregate_receiver_response(params, &pi.sender)?;
        let residual = sup_distance(&pi.sender, &r1.rows).max(sup_distance(&pi.receiver, &r2.rows));
        Ok(SteadyStateResult {
            start,
            delta: params.delta,
            gamma: params.gamma,
            profile: pi,
            sender_se: r1.se,
            receiver_se: r2.se,
            residual,
            converged,
            iterations: trajectory.len(),
            trajectory,
        })
    }

    pub fn start_profile(&self, kind: StartKind, custom: Option<&MixedProfile>) -> Result<MixedProfile> {
        match kind {
            StartKind::Uniform => Ok(self.uniform_profile()),
            StartKind::Myopic => Ok(self.myopic_profile()),
            StartKind::Custom => custom.cloned().ok_or_else(|| Error::Params("custom start requires a profile".into())),
        }
    }

    /// Starts used by default: uniform, myopic, and `custom` when given.
    pub fn starts(custom: Option<&MixedProfile>) -> Vec<StartKind> {
        let mut v = vec![StartKind::Uniform, StartKind::Myopic];
        if custom.is_some() {
            v.push(StartKind::Custom);
        }
        v
    }

    /// One steady-state search per start.
    pub fn steady_states(&self, params: &SimParams, custom: Option<&MixedProfile>) -> Result<Vec<SteadyStateResult>> {
        Self::starts(custom).into_iter().map(|k| self.steady_state(params, &self.start_profile(k, custom)?, k)).collect()
    }

    /// For each `δ` and start, follows steady states up the `γ` grid, warm
    /// starting each point from the previous one.
    pub fn patient_stability_sweep(
        &self,
        deltas: &[f64],
        gammas: &[f64],
        params: &SimParams,
        custom: Option<&MixedProfile>,
        starts: &[StartKind],
    ) -> Result<SweepReport> {
        check_grid("δ", deltas)?;
        check_grid("γ", gammas)?;
        let mut chains = Vec::new();
        for &delta in deltas {
            for &kind in starts {
                let mut init = self.start_profile(kind, custom)?;
                let mut points: Vec<SteadyStateResult> = Vec::new();
                for &gamma in gammas {
                    let p = SimParams { delta, gamma, ..params.clone() };
                    let res = self.steady_state(&p, &init, kind)?;
                    init = res.profile.clone();
                    points.push(res);
                }
                chains.push(SweepChain::new(delta, kind, points, self.lambda(), params));
            }
        }
        let trend = starts
            .iter()
            .map(|&kind| {
                let ours: Vec<&SweepChain> = chains.iter().filter(|c| c.start == kind).collect();
                let distances = ours
                    .windows(2)
                    .map(|w| {
                        let sig = &w[1].on_path_signals;
                        w[1].candidate.on_path_distance(&w[0].candidate, sig)
                    })
                    .collect();
                Trend { start: kind, distances }
            })
            .collect();
        Ok(SweepReport {
            schema_version: SCHEMA_VERSION,
            deltas: deltas.to_vec(),
            gammas: gammas.to_vec(),
            off_path_threshold: params.off_path_threshold,
            stability_tol: params.stability_tol,
            chains,
            trend,
        })
    }
}

fn check_grid(name: &str, grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::Params(format!("{name} grid is empty")));
    }
    if grid.iter().any(|x| !(0.0..1.0).contains(x)) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Params(format!("{name} grid must increase strictly inside [0, 1)")));
    }
    Ok(())
}

/// Steady states along the `γ` grid for one `δ` and one start.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepChain {
    pub delta: f64,
    pub start: StartKind,
    pub points: Vec<SteadyStateResult>,
    /// Profile at the largest `γ`.
    pub candidate: MixedProfile,
    pub on_path_signals: Vec<usize>,
    /// On-path change between the last two `γ` points.
    pub last_change: f64,
    /// Converged at the last point and on-path play settled within tolerance.
    pub stable: bool,
}

impl SweepChain {
    fn new(delta: f64, start: StartKind, points: Vec<SteadyStateResult>, lambda: &[f64], params: &SimParams) -> Self {
        let last = points.last().expect("non-empty grid");
        let candidate = last.profile.clone();
        let on_path_signals = candidate.on_path_signals(lambda, params.off_path_threshold);
        let last_change = match points.len() {
            1 => 0.0,
            n => candidate.on_path_distance(&points[n - 2].profile, &on_path_signals),
        };
        let stable = last.converged && last_change <= params.stability_tol;
        SweepChain { delta, start, points, candidate, on_path_signals, last_change, stable }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub start: StartKind,
    /// On-path distance between candidates at consecutive `δ`.
    pub distances: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub schema_version: u32,
    pub deltas: Vec<f64>,
    pub gammas: Vec<f64>,
    pub off_path_threshold: f64,
    pub stability_tol: f64,
    pub chains: Vec<SweepChain>,
    pub trend: Vec<Trend>,
}

impl SweepReport {
    pub fn candidates(&self) -> impl Iterator<Item = &SweepChain> {
        self.chains.iter().filter(|c| c.stable)
    }
}

/// Steady state for a one-off model.
pub fn steady_state(
    game: &SignalingGame,
    prior: &RegularPriorSpec,
    params: &SimParams,
    init: &MixedProfile,
) -> Result<SteadyStateResult> {
    LearningModel::new(game, prior.clone())?.steady_state(params, init, StartKind::Custom)
}

/// Sweep over the default starts (plus `custom` when given).
pub fn patient_stability_sweep(
    game: &SignalingGame,
    prior: &RegularPriorSpec,
    deltas: &[f64],
    gammas: &[f64],
    params: &SimParams,
    custom: Option<&MixedProfile>,
) -> Result<SweepReport> {
    let model = LearningModel::new(game, prior.clone())?;
    model.patient_stability_sweep(deltas, gammas, params, custom, &LearningModel::starts(custom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::pure_nash_equilibria;
    use crate::learning::PriorMode;
    use crate::rational::q;
    use crate::suite;

    #[test]
    fn trivial_game_converges_at_once() {
        let g = SignalingGame::from_integers(&["t"], &["s"], &["a"], vec![q(1)], &[&[&[1]]], &[&[&[0]]]).unwrap();
        let model = LearningModel::new(&g, RegularPriorSpec::uniform(&g, PriorMode::PayoffKnowledge)).unwrap();
        let p = SimParams::with(0.5, 0.5, 10, 0);
        let r = model.steady_state(&p, &model.uniform_profile(), StartKind::Uniform).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.residual, 0.0);
    }

    /// Two types, two signals, two actions; each type strictly prefers its own
    /// signal whatever the receiver does, so the only Nash outcome separates.
    fn separating_game() -> SignalingGame {
        SignalingGame::from_integers(
            &["t1", "t2"],
            &["s1", "s2"],
            &["a1", "a2"],
            vec![q(1) / q(2), q(1) / q(2)],
            &[&[&[3, 2], &[0, 1]], &[&[0, 1], &[3, 2]]],
            &[&[&[1, 0], &[1, 0]], &[&[0, 1], &[0, 1]]],
        )
        .unwrap()
    }

    #[test]
    fn separating_game_sweep_finds_unique_equilibrium() {
        let g = separating_game();
        let eqs = pure_nash_equilibria(&g);
        assert!(!eqs.is_empty());
        let on_path: Vec<(Vec<usize>, Vec<usize>)> = eqs
            .iter()
            .map(|e| {
                let sig: Vec<usize> = (0..2).map(|t| e.sender.pure_signal(t).unwrap()).collect();
                let act: Vec<usize> = (0..2).map(|s| e.receiver.support(s)[0]).collect();
                (sig, act)
            })
            .collect();
        assert!(on_path.iter().all(|(s, a)| s == &vec![0, 1] && a == &vec![0, 1]));
        let prior = RegularPriorSpec::uniform(&g, PriorMode::FullSupport);
        let params = SimParams { agents: 200, ..SimParams::default() };
        let rep = patient_stability_sweep(&g, &prior, &[0.5, 0.9], &[0.98, 0.99], &params, None).unwrap();
        assert_eq!(rep.chains.len(), 4);
        for c in &rep.chains {
            assert!(c.stable, "{:?}", (c.last_change, &c.points.last().unwrap().trajectory));
            assert!(c.candidate.sender[0][0] > 0.999 && c.candidate.sender[1][1] > 0.999);
            // newborn receivers tie after s2 and pick a1, so a2 only reaches about γ
            assert!(c.candidate.receiver[0][0] > 0.99 && c.candidate.receiver[1][1] > 0.9, "{:?}", c.candidate);
        }
        assert_eq!(rep.schema_version, SCHEMA_VERSION);
    }

    #[test]
    fn grids_must_increase() {
        let g = suite::entry_game();
        let prior = RegularPriorSpec::uniform(&g, PriorMode::PayoffKnowledge);
        let p = SimParams::default();
        assert!(patient_stability_sweep(&g, &prior, &[0.9, 0.5], &[0.9], &p, None).is_err());
        assert!(patient_stability_sweep(&g, &prior, &[0.5], &[], &p, None).is_err());
        assert!(patient_stability_sweep(&g, &prior, &[0.5], &[1.0], &p, None).is_err());
    }
}
