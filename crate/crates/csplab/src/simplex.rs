//! Two-phase primal simplex over exact rationals.
//!
//! Dense tableau, equality constraints, nonnegative variables. Entering and
//! leaving variables follow Bland's smallest-index rule throughout, so the
//! method terminates even on degenerate bases. Everything is `BigRational`;
//! there is no tolerance anywhere.

use crate::Rat;
use num_traits::{One, Signed, Zero};

/// `maximize objective · x  subject to  rows · x = rhs, x >= 0`.
#[derive(Clone, Debug)]
pub struct StandardLp {
    pub num_vars: usize,
    pub rows: Vec<Vec<Rat>>,
    pub rhs: Vec<Rat>,
    pub objective: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rat, solution: Vec<Rat> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    ncols: usize,
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    /// Reduced-cost row of the minimized objective.
    cost: Vec<Rat>,
    /// Negated current objective value.
    cost_rhs: Rat,
    basis: Vec<usize>,
    /// Consecutive pivots without objective change. Entering columns follow
    /// the most-negative rule until a degenerate stretch exceeds the row
    /// count, then the smallest-index rule takes over so no cycle can form.
    degenerate_streak: usize,
}

impl Tableau {
    /// One pivot step. `Ok(true)` means optimal, `Err(())` unbounded.
    fn step(&mut self) -> Result<bool, ()> {
        let bland = self.degenerate_streak > self.rows.len() + 8;
        let enter = if bland {
            (0..self.ncols).find(|&j| self.cost[j].is_negative())
        } else {
            let mut best: Option<usize> = None;
            for j in 0..self.ncols {
                if self.cost[j].is_negative() && best.is_none_or(|b| self.cost[j] < self.cost[b]) {
                    best = Some(j);
                }
            }
            best
        };
        let Some(enter) = enter else {
            return Ok(true);
        };
        // ratio test; ties broken by smallest basic variable index
        let mut leave: Option<usize> = None;
        let mut best: Option<Rat> = None;
        for i in 0..self.rows.len() {
            if self.rows[i][enter].is_positive() {
                let ratio = &self.rhs[i] / &self.rows[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b || (ratio == *b && self.basis[i] < self.basis[leave.unwrap()])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(r) = leave else { return Err(()) };
        let degenerate = self.rhs[r].is_zero();
        self.pivot(r, enter);
        self.degenerate_streak = if degenerate {
            self.degenerate_streak + 1
        } else {
            0
        };
        Ok(false)
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            *v *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i != r && !self.rows[i][c].is_zero() {
                let f = std::mem::replace(&mut self.rows[i][c], Rat::zero());
                for j in 0..self.ncols {
                    if j != c && !self.rows[r][j].is_zero() {
                        let t = &self.rows[r][j] * &f;
                        self.rows[i][j] -= t;
                    }
                }
                let t = &self.rhs[r] * &f;
                self.rhs[i] -= t;
            }
        }
        if !self.cost[c].is_zero() {
            let f = std::mem::replace(&mut self.cost[c], Rat::zero());
            for j in 0..self.ncols {
                if j != c && !self.rows[r][j].is_zero() {
                    let t = &self.rows[r][j] * &f;
                    self.cost[j] -= t;
                }
            }
            let t = &self.rhs[r] * &f;
            self.cost_rhs -= t;
        }
        self.basis[r] = c;
    }

    /// Install reduced costs for minimizing `c`, given the current basis.
    fn set_costs(&mut self, c: &[Rat]) {
        self.degenerate_streak = 0;
        self.cost = c.to_vec();
        self.cost.resize(self.ncols, Rat::zero());
        self.cost_rhs = Rat::zero();
        for i in 0..self.rows.len() {
            let cb = self.cost[self.basis[i]].clone();
            if !cb.is_zero() {
                for j in 0..self.ncols {
                    let t = &self.rows[i][j] * &cb;
                    self.cost[j] -= t;
                }
                let t = &self.rhs[i] * &cb;
                self.cost_rhs -= t;
            }
        }
    }

    fn run(&mut self) -> Result<(), ()> {
        loop {
            if self.step()? {
                return Ok(());
            }
        }
    }
}

/// Solve the LP. Panics if row/rhs/objective dimensions disagree.
pub fn solve(lp: &StandardLp) -> LpOutcome {
    let m = lp.rows.len();
    let n = lp.num_vars;
    assert_eq!(lp.rhs.len(), m);
    assert_eq!(lp.objective.len(), n);

    // phase 1: artificials n..n+m, rhs normalized nonnegative
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        assert_eq!(lp.rows[i].len(), n);
        let flip = lp.rhs[i].is_negative();
        let mut row: Vec<Rat> = lp.rows[i]
            .iter()
            .map(|v| if flip { -v } else { v.clone() })
            .collect();
        row.resize(n + m, Rat::zero());
        row[n + i] = Rat::one();
        rows.push(row);
        rhs.push(if flip { -&lp.rhs[i] } else { lp.rhs[i].clone() });
    }
    let mut t = Tableau {
        ncols: n + m,
        rows,
        rhs,
        cost: vec![],
        cost_rhs: Rat::zero(),
        basis: (n..n + m).collect(),
        degenerate_streak: 0,
    };
    let mut phase1 = vec![Rat::zero(); n + m];
    for c in phase1.iter_mut().skip(n) {
        *c = Rat::one();
    }
    t.set_costs(&phase1);
    t.run().expect("phase 1 objective is bounded below by 0");
    if !t.cost_rhs.is_zero() {
        // minimum of the artificial sum is -cost_rhs > 0
        return LpOutcome::Infeasible;
    }

    // drive artificials out of the basis; rows that cannot pivot are
    // redundant and get dropped
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    // strip artificial columns
    for row in t.rows.iter_mut() {
        row.truncate(n);
    }
    t.ncols = n;

    // phase 2: minimize -objective
    let neg: Vec<Rat> = lp.objective.iter().map(|c| -c).collect();
    t.set_costs(&neg);
    if t.run().is_err() {
        return LpOutcome::Unbounded;
    }
    let mut solution = vec![Rat::zero(); n];
    for (i, &b) in t.basis.iter().enumerate() {
        solution[b] = t.rhs[i].clone();
    }
    let value = lp.objective.iter().zip(&solution).map(|(c, x)| c * x).sum();
    LpOutcome::Optimal { value, solution }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn lp(rows: Vec<Vec<i64>>, rhs: Vec<(i64, i64)>, obj: Vec<i64>) -> StandardLp {
        StandardLp {
            num_vars: obj.len(),
            rows: rows
                .into_iter()
                .map(|r| r.into_iter().map(|v| rat(v, 1)).collect())
                .collect(),
            rhs: rhs.into_iter().map(|(p, q)| rat(p, q)).collect(),
            objective: obj.into_iter().map(|v| rat(v, 1)).collect(),
        }
    }

    #[test]
    fn simplex_on_the_unit_simplex() {
        // max x0 + 2 x1 on x0 + x1 = 1
        let out = solve(&lp(vec![vec![1, 1]], vec![(1, 1)], vec![1, 2]));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(2, 1),
                solution: vec![rat(0, 1), rat(1, 1)]
            }
        );
    }

    #[test]
    fn simplex_equality_pair() {
        // x0 + x1 = 1, x0 - x1 = 0 -> x = (1/2, 1/2)
        let out = solve(&lp(
            vec![vec![1, 1], vec![1, -1]],
            vec![(1, 1), (0, 1)],
            vec![1, 0],
        ));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(1, 2),
                solution: vec![rat(1, 2), rat(1, 2)]
            }
        );
    }

    #[test]
    fn simplex_redundant_rows() {
        let out = solve(&lp(
            vec![vec![1, 1], vec![1, 1], vec![2, 2]],
            vec![(1, 1), (1, 1), (2, 1)],
            vec![3, 1],
        ));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(3, 1),
                solution: vec![rat(1, 1), rat(0, 1)]
            }
        );
    }

    #[test]
    fn simplex_infeasible() {
        let out = solve(&lp(
            vec![vec![1, 1], vec![1, 1]],
            vec![(1, 1), (2, 1)],
            vec![1, 0],
        ));
        assert_eq!(out, LpOutcome::Infeasible);
    }

    #[test]
    fn simplex_unbounded() {
        // x0 - x1 = 0, maximize x0: ray x0 = x1 -> infinity
        let out = solve(&lp(vec![vec![1, -1]], vec![(0, 1)], vec![1, 0]));
        assert_eq!(out, LpOutcome::Unbounded);
    }

    #[test]
    fn simplex_negative_rhs_normalization() {
        // -x0 - x1 = -1 is the unit simplex again
        let out = solve(&lp(vec![vec![-1, -1]], vec![(-1, 1)], vec![0, 1]));
        assert_eq!(
            out,
            LpOutcome::Optimal {
                value: rat(1, 1),
                solution: vec![rat(0, 1), rat(1, 1)]
            }
        );
    }
}
