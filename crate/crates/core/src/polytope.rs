//! Belief polytopes: closed convex subsets of the type simplex in
//! H-representation (a support restriction plus weak linear inequalities).

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::feasibility::{is_feasible, Feasibility, LinearSystem, SimplexBlock};
use crate::game::Belief;
use crate::rational::{self, Q};

/// One inequality `coeffs · p + constant >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefInequality {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BeliefPolytope {
    n_types: usize,
    support: Vec<usize>,
    inequalities: Vec<BeliefInequality>,
}

impl BeliefPolytope {
    /// The whole simplex over `n_types` types.
    pub fn simplex(n_types: usize) -> Self {
        BeliefPolytope { n_types, support: (0..n_types).collect(), inequalities: Vec::new() }
    }

    /// Beliefs supported on `support`; an empty support gives the empty set.
    pub fn on_support(n_types: usize, support: &[usize]) -> Self {
        let mut support = support.to_vec();
        support.sort_unstable();
        support.dedup();
        BeliefPolytope { n_types, support, inequalities: Vec::new() }
    }

    /// Single-point polytope.
    pub fn point(belief: &Belief) -> Self {
        let n = belief.len();
        let mut p = BeliefPolytope::simplex(n);
        for (i, v) in belief.probs().iter().enumerate() {
            let mut c = vec![Q::zero(); n];
            c[i] = Q::from_integer(1.into());
            p.add_ge(c.clone(), -v.clone());
            p.add_ge(c.into_iter().map(|x| -x).collect(), v.clone());
        }
        p
    }

    pub fn n_types(&self) -> usize {
        self.n_types
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn inequalities(&self) -> &[BeliefInequality] {
        &self.inequalities
    }

    pub fn add_ge(&mut self, coeffs: Vec<Q>, constant: Q) -> &mut Self {
        assert_eq!(coeffs.len(), self.n_types, "inequality dimension");
        self.inequalities.push(BeliefInequality { coeffs, constant });
        self
    }

    /// Adds `p(lesser) * prior(greater) <= prior(lesser) * p(greater)`.
    pub fn add_odds_ratio(&mut self, greater: usize, lesser: usize, prior: &[Q]) -> &mut Self {
        let mut c = vec![Q::zero(); self.n_types];
        c[greater] += &prior[lesser];
        c[lesser] -= &prior[greater];
        self.add_ge(c, Q::zero())
    }

    pub fn restrict_support(&mut self, keep: &[usize]) -> &mut Self {
        self.support.retain(|t| keep.contains(t));
        self
    }

    pub fn intersect(&self, other: &BeliefPolytope) -> BeliefPolytope {
        let mut out = self.clone();
        out.restrict_support(&other.support);
        out.inequalities.extend(other.inequalities.iter().cloned());
        out
    }

    /// Linear system with a single belief block; `None` when the support is empty.
    pub fn system(&self) -> Option<LinearSystem> {
        if self.support.is_empty() {
            return None;
        }
        let mut sys = LinearSystem::new(vec![SimplexBlock::with_support("p", self.n_types, &self.support)]);
        for ineq in &self.inequalities {
            sys.ge(ineq.coeffs.clone(), ineq.constant.clone());
        }
        Some(sys)
    }

    pub fn witness(&self) -> Result<Option<Belief>> {
        let Some(sys) = self.system() else { return Ok(None) };
        Ok(match is_feasible(&sys)? {
            Feasibility::Feasible(w) => Some(Belief::new_unchecked(w)),
            Feasibility::Infeasible => None,
        })
    }

    pub fn is_empty(&self) -> Result<bool> {
        Ok(self.witness()?.is_none())
    }

    pub fn contains(&self, p: &Belief) -> bool {
        p.len() == self.n_types
            && p.probs().iter().enumerate().all(|(i, v)| v.is_zero() || self.support.contains(&i))
            && self.inequalities.iter().all(|ineq| {
                let v = ineq.coeffs.iter().zip(p.probs()).fold(ineq.constant.clone(), |acc, (c, x)| acc + c * x);
                !v.is_negative()
            })
    }

    /// Exact containment test `self ⊆ other`.
    pub fn is_subset_of(&self, other: &BeliefPolytope) -> Result<bool> {
        let Some(base) = self.system() else { return Ok(true) };
        if !is_feasible(&base)?.is_feasible() {
            return Ok(true);
        }
        for t in 0..self.n_types {
            if self.support.contains(&t) && !other.support.contains(&t) {
                let mut sys = base.clone();
                let mut c = vec![Q::zero(); self.n_types];
                c[t] = Q::from_integer(1.into());
                sys.gt(c, Q::zero());
                if is_feasible(&sys)?.is_feasible() {
                    return Ok(false);
                }
            }
        }
        for ineq in &other.inequalities {
            let mut sys = base.clone();
            sys.gt(ineq.coeffs.iter().map(|c| -c.clone()).collect(), -ineq.constant.clone());
            if is_feasible(&sys)?.is_feasible() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Human-readable description using the given type names.
    pub fn describe(&self, type_names: &[String]) -> String {
        let mut parts = Vec::new();
        let sup: Vec<&str> = self.support.iter().map(|&t| type_names[t].as_str()).collect();
        parts.push(format!("support {{{}}}", sup.join(", ")));
        for ineq in &self.inequalities {
            let lhs = rational::linear(
                ineq.coeffs.iter().enumerate().map(|(i, c)| (c, format!("p({})", type_names[i]))).chain([(&ineq.constant, String::new())]),
            );
            parts.push(format!("{lhs} >= 0"));
        }
        parts.join("; ")
    }
}
