//! Brute-force Gittins index by the largest-remaining-index algorithm on the
//! explicit count-state chain. States at the horizon are absorbing and pay
//! their posterior mean forever.

use std::collections::HashMap;

struct Chain {
    reward: Vec<f64>,
    /// `(target, probability)`; empty for absorbing states.
    next: Vec<Vec<(usize, f64)>>,
    depth: Vec<usize>,
}

fn build(payoffs: &[f64], weights: &[f64], horizon: usize) -> Chain {
    let k = payoffs.len();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut states: Vec<Vec<usize>> = Vec::new();
    let mut frontier = vec![vec![0usize; k]];
    ids.insert(vec![0; k], 0);
    states.push(vec![0; k]);
    for _ in 0..horizon {
        let mut next_frontier = Vec::new();
        for c in &frontier {
            for j in 0..k {
                let mut d = c.clone();
                d[j] += 1;
                if !ids.contains_key(&d) {
                    ids.insert(d.clone(), states.len());
                    states.push(d.clone());
                    next_frontier.push(d);
                }
            }
        }
        frontier = next_frontier;
    }
    let w0: f64 = weights.iter().sum();
    let mut chain = Chain { reward: Vec::new(), next: Vec::new(), depth: Vec::new() };
    for c in &states {
        let m: usize = c.iter().sum();
        let p: Vec<f64> = (0..k).map(|j| (weights[j] + c[j] as f64) / (w0 + m as f64)).collect();
        chain.reward.push((0..k).map(|j| p[j] * payoffs[j]).sum());
        chain.depth.push(m);
        chain.next.push(if m == horizon {
            Vec::new()
        } else {
            (0..k)
                .map(|j| {
                    let mut d = c.clone();
                    d[j] += 1;
                    (ids[&d], p[j])
                })
                .collect()
        });
    }
    chain
}

pub fn vwb_index(payoffs: &[f64], weights: &[f64], beta: f64, horizon: usize) -> f64 {
    let chain = build(payoffs, weights, horizon);
    let n = chain.reward.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(chain.depth[i]));
    let mut in_c = vec![false; n];
    let mut r = vec![0.0; n];
    let mut w = vec![0.0; n];
    loop {
        for &i in &order {
            if chain.next[i].is_empty() {
                let f = if in_c[i] { 1.0 / (1.0 - beta) } else { 1.0 };
                r[i] = chain.reward[i] * f;
                w[i] = f;
            } else {
                let (mut er, mut ew) = (0.0, 0.0);
                for &(j, p) in &chain.next[i] {
                    if in_c[j] {
                        er += p * r[j];
                        ew += p * w[j];
                    }
                }
                r[i] = chain.reward[i] + beta * er;
                w[i] = 1.0 + beta * ew;
            }
        }
        let (best, nu) = (0..n)
            .filter(|&i| !in_c[i])
            .map(|i| (i, r[i] / w[i]))
            .fold((usize::MAX, f64::NEG_INFINITY), |acc, x| if x.1 > acc.1 { x } else { acc });
        if best == 0 {
            return nu;
        }
        in_c[best] = true;
    }
}
