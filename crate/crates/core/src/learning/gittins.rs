//! Gittins indices of Dirichlet arms.
//!
//! The index is calibrated by Dinkelbach iteration: for a charge `λ` the
//! optimal-stopping problem over count states is solved backwards, and `λ`
//! is replaced by the reward-per-discounted-pull ratio of the optimal rule
//! until it stops increasing. States at the horizon keep their posterior
//! mean forever.

use std::collections::HashMap;

use parking_lot::RwLock;

use super::dirichlet::DirichletBelief;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GittinsConfig {
    /// Target bound on `β^T · range / (1 − β)`.
    pub tol: f64,
    /// Cap on the number of count states per dynamic-programming pass.
    pub max_states: usize,
}

impl Default for GittinsConfig {
    fn default() -> Self {
        GittinsConfig { tol: 1e-6, max_states: 1_000_000 }
    }
}

/// Gittins index of pulling an arm whose per-pull payoff is `payoffs[a]`,
/// `a` drawn from the posterior of `belief`, under discount `beta`.
pub fn gittins_index(payoffs: &[f64], belief: &DirichletBelief, beta: f64, tol: f64) -> Result<f64> {
    let arm = Arm::new(payoffs, belief)?;
    check_beta(beta)?;
    let cfg = GittinsConfig { tol, ..GittinsConfig::default() };
    Ok(arm.index(beta, arm.horizon(beta, &cfg)))
}

/// Index of the arm truncated at an explicit horizon.
pub fn gittins_index_at_horizon(payoffs: &[f64], belief: &DirichletBelief, beta: f64, horizon: usize) -> Result<f64> {
    let arm = Arm::new(payoffs, belief)?;
    check_beta(beta)?;
    Ok(arm.index(beta, horizon))
}

fn check_beta(beta: f64) -> Result<()> {
    if !(0.0..1.0).contains(&beta) {
        return Err(Error::Params(format!("discount {beta} must lie in [0, 1)")));
    }
    Ok(())
}

/// Canonical arm: outcomes with equal payoffs merged, sorted by payoff.
/// Merging is exact because aggregated Dirichlet categories stay Dirichlet.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Arm {
    payoffs: Vec<f64>,
    weights: Vec<f64>,
}

impl Arm {
    pub(crate) fn new(payoffs: &[f64], belief: &DirichletBelief) -> Result<Self> {
        let mut pairs = Vec::with_capacity(belief.support().len());
        for (o, w) in belief.support().iter().zip(belief.posterior_weights()) {
            let u = *payoffs.get(*o).ok_or(Error::Dimension { expected: *o + 1, got: payoffs.len() })?;
            if !u.is_finite() {
                return Err(Error::Params("payoffs must be finite".into()));
            }
            pairs.push((u, w));
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut arm = Arm { payoffs: Vec::new(), weights: Vec::new() };
        for (u, w) in pairs {
            if arm.payoffs.last() == Some(&u) {
                *arm.weights.last_mut().unwrap() += w;
            } else {
                arm.payoffs.push(u);
                arm.weights.push(w);
            }
        }
        Ok(arm)
    }

    pub(crate) fn mean(&self) -> f64 {
        let tot: f64 = self.weights.iter().sum();
        self.payoffs.iter().zip(&self.weights).map(|(u, w)| u * w).sum::<f64>() / tot
    }

    pub(crate) fn max_payoff(&self) -> f64 {
        *self.payoffs.last().expect("non-empty arm")
    }

    pub(crate) fn key(&self, beta: f64) -> Vec<u64> {
        let mut k = Vec::with_capacity(1 + 2 * self.payoffs.len());
        k.push(beta.to_bits());
        k.extend(self.payoffs.iter().map(|u| u.to_bits()));
        k.extend(self.weights.iter().map(|w| w.to_bits()));
        k
    }

    /// Smallest horizon meeting the tolerance, shortened to respect the state cap.
    pub(crate) fn horizon(&self, beta: f64, cfg: &GittinsConfig) -> usize {
        let k = self.payoffs.len();
        if k < 2 || beta == 0.0 {
            return 0;
        }
        let range = self.max_payoff() - self.payoffs[0];
        let mut t = 0usize;
        let mut bound = range / (1.0 - beta);
        while bound >= cfg.tol && t < 1_000_000 {
            bound *= beta;
            t += 1;
        }
        let mut cap = t;
        while cap > 1 && binom_f64(cap + k, k) > cfg.max_states as f64 {
            cap -= 1;
        }
        cap.min(t)
    }

    pub(crate) fn index(&self, beta: f64, horizon: usize) -> f64 {
        let mean = self.mean();
        if self.payoffs.len() < 2 || beta == 0.0 {
            return mean;
        }
        let dp = CountDp::new(self, beta, horizon);
        let mut lambda = mean;
        for _ in 0..500 {
            let (r, w) = dp.solve(lambda);
            let next = r / w;
            if !(next > lambda + 1e-14 * (1.0 + lambda.abs())) {
                return next.max(lambda);
            }
            lambda = next;
        }
        lambda
    }
}

fn binom_f64(n: usize, r: usize) -> f64 {
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Backward induction over count vectors with `m ≤ horizon` total pulls.
/// Layer `m` is stored densely, ranked through the stars-and-bars bijection.
struct CountDp<'a> {
    arm: &'a Arm,
    beta: f64,
    horizon: usize,
    binom: Vec<Vec<usize>>,
}

impl<'a> CountDp<'a> {
    fn new(arm: &'a Arm, beta: f64, horizon: usize) -> Self {
        let k = arm.payoffs.len();
        let n = horizon + k + 1;
        let mut binom = vec![vec![0usize; k + 1]; n + 1];
        for i in 0..=n {
            binom[i][0] = 1;
            for j in 1..=k.min(i) {
                binom[i][j] = binom[i - 1][j - 1] + if j <= i - 1 { binom[i - 1][j] } else { 0 };
            }
        }
        CountDp { arm, beta, horizon, binom }
    }

    fn layer_size(&self, m: usize) -> usize {
        let k = self.arm.payoffs.len();
        self.binom[m + k - 1][k - 1]
    }

    /// Rank of `c` (+ `e_bump` if given) within its layer.
    fn rank(&self, c: &[usize], bump: Option<usize>) -> usize {
        let k = c.len();
        let mut pos = 0usize;
        let mut r = 0usize;
        for j in 0..k - 1 {
            pos += c[j] + usize::from(bump == Some(j));
            r += self.binom[pos + j][j + 1];
        }
        r
    }

    /// Discounted reward and discounted pull count at the root under the
    /// optimal stopping rule for charge `lambda`.
    fn solve(&self, lambda: f64) -> (f64, f64) {
        let k = self.arm.payoffs.len();
        let beta = self.beta;
        let w0: f64 = self.arm.weights.iter().sum();
        let cap = self.layer_size(self.horizon);
        let mut nu = vec![0.0; cap];
        let mut nr = vec![0.0; cap];
        let mut nw = vec![0.0; cap];
        let mut cu = vec![0.0; cap];
        let mut cr = vec![0.0; cap];
        let mut cw = vec![0.0; cap];
        let mut c = vec![0usize; k];
        let mut probs = vec![0.0; k];
        for m in (0..=self.horizon).rev() {
            c.iter_mut().for_each(|x| *x = 0);
            c[k - 1] = m;
            let tot = w0 + m as f64;
            loop {
                let mut mean = 0.0;
                for j in 0..k {
                    probs[j] = (self.arm.weights[j] + c[j] as f64) / tot;
                    mean += probs[j] * self.arm.payoffs[j];
                }
                let (u, r, w) = if m == self.horizon {
                    ((mean - lambda) / (1.0 - beta), mean / (1.0 - beta), 1.0 / (1.0 - beta))
                } else {
                    let (mut eu, mut er, mut ew) = (0.0, 0.0, 0.0);
                    for j in 0..k {
                        let child = self.rank(&c, Some(j));
                        eu += probs[j] * nu[child];
                        er += probs[j] * nr[child];
                        ew += probs[j] * nw[child];
                    }
                    (mean - lambda + beta * eu, mean + beta * er, 1.0 + beta * ew)
                };
                let idx = self.rank(&c, None);
                if m == 0 || u > 0.0 {
                    cu[idx] = u;
                    cr[idx] = r;
                    cw[idx] = w;
                } else {
                    cu[idx] = 0.0;
                    cr[idx] = 0.0;
                    cw[idx] = 0.0;
                }
                if !next_composition(&mut c, m) {
                    break;
                }
            }
            std::mem::swap(&mut nu, &mut cu);
            std::mem::swap(&mut nr, &mut cr);
            std::mem::swap(&mut nw, &mut cw);
        }
        (nr[0], nw[0])
    }
}

/// Odometer over the first `k − 1` coordinates; the last one absorbs the rest.
fn next_composition(c: &mut [usize], m: usize) -> bool {
    let k = c.len();
    let mut j = 0;
    loop {
        if j + 1 >= k {
            return false;
        }
        if c[k - 1] > 0 {
            c[j] += 1;
            c[k - 1] -= 1;
            return true;
        }
        c[k - 1] += c[j];
        c[j] = 0;
        j += 1;
        debug_assert!(c[k - 1] <= m);
    }
}

/// Thread-safe memo of computed indices, keyed by the canonical arm and the
/// truncation settings.
#[derive(Debug, Default)]
pub struct GittinsCache {
    map: RwLock<HashMap<Vec<u64>, f64>>,
}

impl GittinsCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.read().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub(crate) fn index(&self, arm: &Arm, beta: f64, cfg: &GittinsConfig) -> f64 {
        if arm.payoffs.len() < 2 || beta == 0.0 {
            return arm.mean();
        }
        let mut key = arm.key(beta);
        key.push(cfg.tol.to_bits());
        key.push(cfg.max_states as u64);
        if let Some(v) = self.map.read().get(&key) {
            return *v;
        }
        let v = arm.index(beta, arm.horizon(beta, cfg));
        self.map.write().insert(key, v);
        v
    }

    pub fn get(&self, payoffs: &[f64], belief: &DirichletBelief, beta: f64, cfg: &GittinsConfig) -> Result<f64> {
        check_beta(beta)?;
        Ok(self.index(&Arm::new(payoffs, belief)?, beta, cfg))
    }
}
