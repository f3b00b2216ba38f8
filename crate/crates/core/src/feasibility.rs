//! Exact linear feasibility over products of simplices.
//!
//! Every quantifier of the form "there is a receiver strategy in a product of
//! simplices" or "there is a belief in a polytope" reduces to one call of
//! [`is_feasible`]. Strict inequalities are handled by maximizing a common
//! slack `t` (capped at 1) and testing `t > 0` exactly.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// A block of variables constrained to the standard simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexBlock {
    pub label: String,
    pub dim: usize,
    /// Coordinates forced to zero (support restriction).
    pub zero_forced: Vec<usize>,
}

impl SimplexBlock {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        SimplexBlock { label: label.into(), dim, zero_forced: Vec::new() }
    }

    /// Block whose support is restricted to `support` (indices into `0..dim`).
    pub fn with_support(label: impl Into<String>, dim: usize, support: &[usize]) -> Self {
        let zero_forced = (0..dim).filter(|i| !support.contains(i)).collect();
        SimplexBlock { label: label.into(), dim, zero_forced }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// `coeffs · x + constant >= 0`
    Ge,
    /// `coeffs · x + constant == 0`
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<Q>,
    pub constant: Q,
    pub relation: Relation,
}

impl Constraint {
    pub fn eval(&self, x: &[Q]) -> Q {
        affine(&self.coeffs, &self.constant, x)
    }
}

/// `coeffs · x + constant > 0`
#[derive(Debug, Clone, PartialEq)]
pub struct StrictConstraint {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct LinearSystem {
    pub blocks: Vec<SimplexBlock>,
    pub weak: Vec<Constraint>,
    pub strict: Vec<StrictConstraint>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Feasibility {
    Feasible(Vec<Q>),
    Infeasible,
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }

    pub fn witness(&self) -> Option<&[Q]> {
        match self {
            Feasibility::Feasible(w) => Some(w),
            Feasibility::Infeasible => None,
        }
    }
}

fn affine(coeffs: &[Q], constant: &Q, x: &[Q]) -> Q {
    coeffs.iter().zip(x).fold(constant.clone(), |acc, (c, v)| acc + c * v)
}

impl LinearSystem {
    pub fn new(blocks: Vec<SimplexBlock>) -> Self {
        LinearSystem { blocks, weak: Vec::new(), strict: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }

    /// Index of the first variable of block `b`.
    pub fn offset(&self, b: usize) -> usize {
        self.blocks[..b].iter().map(|b| b.dim).sum()
    }

    pub fn zeros(&self) -> Vec<Q> {
        vec![Q::zero(); self.num_vars()]
    }

    pub fn ge(&mut self, coeffs: Vec<Q>, constant: Q) -> &mut Self {
        self.weak.push(Constraint { coeffs, constant, relation: Relation::Ge });
        self
    }

    pub fn equal(&mut self, coeffs: Vec<Q>, constant: Q) -> &mut Self {
        self.weak.push(Constraint { coeffs, constant, relation: Relation::Eq });
        self
    }

    pub fn gt(&mut self, coeffs: Vec<Q>, constant: Q) -> &mut Self {
        self.strict.push(StrictConstraint { coeffs, constant });
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vars();
        for b in &self.blocks {
            if b.dim == 0 {
                return Err(Error::MalformedSystem(format!("block `{}` has dimension 0", b.label)));
            }
            if b.zero_forced.iter().any(|&i| i >= b.dim) {
                return Err(Error::MalformedSystem(format!("block `{}` forces an out-of-range coordinate", b.label)));
            }
            if (0..b.dim).all(|i| b.zero_forced.contains(&i)) {
                return Err(Error::MalformedSystem(format!("block `{}` forces every coordinate to zero", b.label)));
            }
        }
        let bad = self.weak.iter().map(|c| c.coeffs.len()).chain(self.strict.iter().map(|c| c.coeffs.len())).find(|&len| len != n);
        if let Some(len) = bad {
            return Err(Error::MalformedSystem(format!("constraint has {len} coefficients, system has {n} variables")));
        }
        Ok(())
    }

    /// Checks a candidate point exactly against every constraint.
    pub fn satisfied_by(&self, x: &[Q]) -> bool {
        if x.len() != self.num_vars() || x.iter().any(|v| v.is_negative()) {
            return false;
        }
        let mut off = 0;
        for b in &self.blocks {
            let part = &x[off..off + b.dim];
            if !rational::sum(part).is_one() || b.zero_forced.iter().any(|&i| !part[i].is_zero()) {
                return false;
            }
            off += b.dim;
        }
        let weak_ok = self.weak.iter().all(|c| {
            let v = c.eval(x);
            match c.relation {
                Relation::Ge => !v.is_negative(),
                Relation::Eq => v.is_zero(),
            }
        });
        weak_ok && self.strict.iter().all(|c| affine(&c.coeffs, &c.constant, x).is_positive())
    }
}

impl fmt::Display for LinearSystem {
    /// LP-like debug dump.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut names = Vec::new();
        for b in &self.blocks {
            for i in 0..b.dim {
                names.push(format!("{}[{}]", b.label, i));
            }
            let vars: Vec<_> = (0..b.dim).map(|i| format!("{}[{}]", b.label, i)).collect();
            writeln!(f, "simplex {}: {} = 1", b.label, vars.join(" + "))?;
            for &z in &b.zero_forced {
                writeln!(f, "  {}[{}] = 0", b.label, z)?;
            }
        }
        let term = |coeffs: &[Q], constant: &Q| {
            rational::linear(coeffs.iter().zip(&names).map(|(c, n)| (c, n.to_string())).chain([(constant, String::new())]))
        };
        for c in &self.weak {
            let rel = if c.relation == Relation::Ge { ">=" } else { "=" };
            writeln!(f, "{} {} 0", term(&c.coeffs, &c.constant), rel)?;
        }
        for c in &self.strict {
            writeln!(f, "{} > 0", term(&c.coeffs, &c.constant))?;
        }
        Ok(())
    }
}

/// Decides the system exactly and returns an exact witness when feasible.
pub fn is_feasible(system: &LinearSystem) -> Result<Feasibility> {
    system.validate()?;
    let n = system.num_vars();
    let has_strict = !system.strict.is_empty();
    let nv = if has_strict { n + 1 } else { n };
    let t = n;

    let mut rows: Vec<Row> = Vec::new();
    let mut off = 0;
    for b in &system.blocks {
        let mut a = vec![Q::zero(); nv];
        for i in 0..b.dim {
            a[off + i] = Q::one();
        }
        rows.push(Row { a, rel: Rel::Eq, b: Q::one() });
        for &z in &b.zero_forced {
            let mut a = vec![Q::zero(); nv];
            a[off + z] = Q::one();
            rows.push(Row { a, rel: Rel::Eq, b: Q::zero() });
        }
        off += b.dim;
    }
    for c in &system.weak {
        let mut a = c.coeffs.clone();
        a.resize(nv, Q::zero());
        let rel = match c.relation {
            Relation::Ge => Rel::Ge,
            Relation::Eq => Rel::Eq,
        };
        rows.push(Row { a, rel, b: -c.constant.clone() });
    }
    for c in &system.strict {
        let mut a = c.coeffs.clone();
        a.push(-Q::one());
        rows.push(Row { a, rel: Rel::Ge, b: -c.constant.clone() });
    }
    let mut objective = vec![Q::zero(); nv];
    if has_strict {
        let mut a = vec![Q::zero(); nv];
        a[t] = Q::one();
        rows.push(Row { a, rel: Rel::Le, b: Q::one() });
        objective[t] = Q::one();
    }

    let Some((x, value)) = lp::maximize(&objective, rows)? else {
        return Ok(Feasibility::Infeasible);
    };
    if has_strict && !value.is_positive() {
        return Ok(Feasibility::Infeasible);
    }
    let witness: Vec<Q> = x[..n].to_vec();
    if !system.satisfied_by(&witness) {
        return Err(Error::Internal(format!("solver witness fails substitution check\n{system}")));
    }
    Ok(Feasibility::Feasible(witness))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rel {
    Le,
    Ge,
    Eq,
}

struct Row {
    a: Vec<Q>,
    rel: Rel,
    b: Q,
}

mod lp {
    //! Dense two-phase primal simplex over exact rationals with Bland's rule.

    use super::{Rel, Row};
    use crate::error::{Error, Result};
    use crate::rational::Q;
    use num_traits::{One, Signed, Zero};

    struct Tableau {
        a: Vec<Vec<Q>>,
        b: Vec<Q>,
        basis: Vec<usize>,
        artificial_from: usize,
    }

    impl Tableau {
        fn pivot(&mut self, r: usize, c: usize) {
            let p = self.a[r][c].clone();
            for v in self.a[r].iter_mut() {
                *v /= &p;
            }
            self.b[r] /= &p;
            let prow = self.a[r].clone();
            let pb = self.b[r].clone();
            for i in 0..self.a.len() {
                if i == r || self.a[i][c].is_zero() {
                    continue;
                }
                let f = self.a[i][c].clone();
                for (v, pv) in self.a[i].iter_mut().zip(&prow) {
                    if !pv.is_zero() {
                        *v -= &f * pv;
                    }
                }
                self.b[i] -= &f * &pb;
            }
            self.basis[r] = c;
        }

        /// Maximizes `cost` over columns `< ncols`. Returns false if unbounded.
        fn run(&mut self, cost: &[Q], ncols: usize) -> bool {
            loop {
                let mut entering = None;
                for j in 0..ncols {
                    if self.basis.contains(&j) {
                        continue;
                    }
                    let mut r = cost[j].clone();
                    for (i, &bi) in self.basis.iter().enumerate() {
                        if !cost[bi].is_zero() && !self.a[i][j].is_zero() {
                            r -= &cost[bi] * &self.a[i][j];
                        }
                    }
                    if r.is_positive() {
                        entering = Some(j);
                        break;
                    }
                }
                let Some(j) = entering else { return true };
                let mut leave: Option<(usize, Q)> = None;
                for i in 0..self.a.len() {
                    if self.a[i][j].is_positive() {
                        let ratio = &self.b[i] / &self.a[i][j];
                        let better = match &leave {
                            None => true,
                            Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                        };
                        if better {
                            leave = Some((i, ratio));
                        }
                    }
                }
                let Some((i, _)) = leave else { return false };
                self.pivot(i, j);
            }
        }
    }

    /// Maximizes `objective · x` subject to `rows`, `x >= 0`.
    /// Returns `None` when the constraints are infeasible.
    pub(super) fn maximize(objective: &[Q], rows: Vec<Row>) -> Result<Option<(Vec<Q>, Q)>> {
        let n = objective.len();
        let m = rows.len();
        let mut rows = rows;
        for row in rows.iter_mut() {
            if row.b.is_negative() {
                for v in row.a.iter_mut() {
                    *v = -v.clone();
                }
                row.b = -row.b.clone();
                row.rel = match row.rel {
                    Rel::Le => Rel::Ge,
                    Rel::Ge => Rel::Le,
                    Rel::Eq => Rel::Eq,
                };
            }
        }
        let n_slack = rows.iter().filter(|r| r.rel != Rel::Eq).count();
        let n_art = rows.iter().filter(|r| r.rel != Rel::Le).count();
        let total = n + n_slack + n_art;
        let artificial_from = n + n_slack;
        let mut a = vec![vec![Q::zero(); total]; m];
        let mut b = Vec::with_capacity(m);
        let mut basis = vec![0; m];
        let (mut s, mut art) = (n, artificial_from);
        for (i, row) in rows.into_iter().enumerate() {
            a[i][..n].clone_from_slice(&row.a);
            match row.rel {
                Rel::Le => {
                    a[i][s] = Q::one();
                    basis[i] = s;
                    s += 1;
                }
                Rel::Ge => {
                    a[i][s] = -Q::one();
                    s += 1;
                    a[i][art] = Q::one();
                    basis[i] = art;
                    art += 1;
                }
                Rel::Eq => {
                    a[i][art] = Q::one();
                    basis[i] = art;
                    art += 1;
                }
            }
            b.push(row.b);
        }
        let mut tab = Tableau { a, b, basis, artificial_from };

        // Phase 1: drive the artificial variables to zero.
        let mut phase1 = vec![Q::zero(); total];
        for c in phase1.iter_mut().skip(artificial_from) {
            *c = -Q::one();
        }
        if !tab.run(&phase1, total) {
            return Err(Error::Internal("phase-1 simplex reported unbounded".into()));
        }
        let infeasibility: Q = tab
            .basis
            .iter()
            .zip(&tab.b)
            .filter(|(&bi, _)| bi >= artificial_from)
            .fold(Q::zero(), |acc, (_, v)| acc + v);
        if infeasibility.is_positive() {
            return Ok(None);
        }
        // Pivot remaining (zero-valued) artificials out of the basis; drop redundant rows.
        let mut i = 0;
        while i < tab.a.len() {
            if tab.basis[i] >= tab.artificial_from {
                match (0..tab.artificial_from).find(|&j| !tab.a[i][j].is_zero()) {
                    Some(j) => {
                        tab.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        tab.a.remove(i);
                        tab.b.remove(i);
                        tab.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }

        let mut cost = vec![Q::zero(); total];
        cost[..n].clone_from_slice(objective);
        if !tab.run(&cost, tab.artificial_from) {
            return Err(Error::Internal("objective unbounded on a bounded system".into()));
        }
        let mut x = vec![Q::zero(); n];
        for (i, &bi) in tab.basis.iter().enumerate() {
            if bi < n {
                x[bi] = tab.b[i].clone();
            }
        }
        let value = objective.iter().zip(&x).fold(Q::zero(), |acc, (c, v)| acc + c * v);
        Ok(Some((x, value)))
    }
}

/// Brute-force grid search over the product of simplices (test oracle).
#[doc(hidden)]
pub fn grid_search(system: &LinearSystem, steps: u32) -> Option<Vec<Q>> {
    fn block_points(dim: usize, zero: &[usize], steps: u32) -> Vec<Vec<Q>> {
        let free: Vec<usize> = (0..dim).filter(|i| !zero.contains(i)).collect();
        let mut out = Vec::new();
        let mut counts = vec![0u32; free.len()];
        fn rec(k: usize, left: u32, counts: &mut Vec<u32>, free: &[usize], dim: usize, steps: u32, out: &mut Vec<Vec<Q>>) {
            if k + 1 == free.len() {
                counts[k] = left;
                let mut p = vec![Q::zero(); dim];
                for (c, &f) in counts.iter().zip(free) {
                    p[f] = crate::rational::qf(*c as i64, steps as i64);
                }
                out.push(p);
                return;
            }
            for c in 0..=left {
                counts[k] = c;
                rec(k + 1, left - c, counts, free, dim, steps, out);
            }
        }
        rec(0, steps, &mut counts, &free, dim, steps, &mut out);
        out
    }
    let per_block: Vec<Vec<Vec<Q>>> = system.blocks.iter().map(|b| block_points(b.dim, &b.zero_forced, steps)).collect();
    let mut idx = vec![0usize; per_block.len()];
    loop {
        let point: Vec<Q> = idx.iter().zip(&per_block).flat_map(|(&i, pts)| pts[i].iter().cloned()).collect();
        if system.satisfied_by(&point) {
            return Some(point);
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                return None;
            }
            idx[k] += 1;
            if idx[k] < per_block[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
