use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A Dirichlet belief over a subset of a finite outcome set, with the
/// observation counts accumulated so far.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirichletBelief {
    support: Vec<usize>,
    weights: Vec<f64>,
    counts: Vec<u64>,
}

impl DirichletBelief {
    /// `support` must be strictly increasing; `weights` positive and finite.
    pub fn new(support: Vec<usize>, weights: Vec<f64>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Params("Dirichlet support is empty".into()));
        }
        if support.len() != weights.len() {
            return Err(Error::Dimension { expected: support.len(), got: weights.len() });
        }
        if support.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Params("Dirichlet support must be strictly increasing".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
            return Err(Error::Params("Dirichlet weights must be positive".into()));
        }
        let counts = vec![0; support.len()];
        Ok(DirichletBelief { support, weights, counts })
    }

    pub fn uniform(support: Vec<usize>) -> Result<Self> {
        let w = vec![1.0; support.len()];
        Self::new(support, w)
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn contains(&self, outcome: usize) -> bool {
        self.position(outcome).is_some()
    }

    fn position(&self, outcome: usize) -> Option<usize> {
        self.support.binary_search(&outcome).ok()
    }

    pub fn observations(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Posterior weight (prior weight plus count) of a supported outcome, 0 otherwise.
    pub fn posterior_weight(&self, outcome: usize) -> f64 {
        self.position(outcome).map_or(0.0, |i| self.weights[i] + self.counts[i] as f64)
    }

    pub fn posterior_weights(&self) -> Vec<f64> {
        self.weights.iter().zip(&self.counts).map(|(w, c)| w + *c as f64).collect()
    }

    pub fn total(&self) -> f64 {
        self.weights.iter().sum::<f64>() + self.observations() as f64
    }

    /// Posterior mean, indexed like `support`.
    pub fn mean(&self) -> Vec<f64> {
        let tot = self.total();
        self.posterior_weights().into_iter().map(|w| w / tot).collect()
    }

    /// Posterior mean over the whole outcome set of size `n`.
    pub fn mean_full(&self, n: usize) -> Vec<f64> {
        let mut out = vec![0.0; n];
        for (o, p) in self.support.iter().zip(self.mean()) {
            out[*o] = p;
        }
        out
    }

    /// Expected payoff under the posterior mean; `payoffs` is indexed by outcome.
    pub fn expected(&self, payoffs: &[f64]) -> f64 {
        let num: f64 = self
            .support
            .iter()
            .zip(self.weights.iter().zip(&self.counts))
            .map(|(o, (w, c))| (w + *c as f64) * payoffs[*o])
            .sum();
        num / self.total()
    }

    pub fn observe(&mut self, outcome: usize) -> Result<()> {
        let i = self
            .position(outcome)
            .ok_or_else(|| Error::Contract(format!("outcome {outcome} lies outside the belief support")))?;
        self.counts[i] += 1;
        Ok(())
    }

    pub fn reset(&mut self) {
        self.counts.iter_mut().for_each(|c| *c = 0);
    }

    /// Same belief with the given counts.
    pub fn with_counts(mut self, counts: Vec<u64>) -> Result<Self> {
        if counts.len() != self.support.len() {
            return Err(Error::Dimension { expected: self.support.len(), got: counts.len() });
        }
        self.counts = counts;
        Ok(self)
    }
}
