//! DPLL search over constraint axiom clauses, with unit propagation and
//! tree-resolution trace extraction.
//!
//! Every conflict clause is regressed through the unit propagations of its
//! level (resolving against each reason clause), and the two branch
//! conflicts of a decision resolve on the decision variable — except when a
//! branch's conflict clause does not mention it, in which case that clause
//! already refutes the parent level and the other branch is skipped. An
//! unsatisfiable run therefore ends holding the empty clause, and the
//! recorded steps form a checkable refutation.

use super::{constraint_axioms, Clause, ResolutionTrace, TraceRule, TraceStep};
use crate::instance::{Assignment, Instance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchRule {
    /// Smallest-index unassigned variable, `+1` first.
    FirstUnassigned,
    /// Most occurrences among unsatisfied clauses; the more frequent sign
    /// first, ties toward `+1`.
    MaxOccurrence,
    /// Uniform unassigned variable and sign from the seeded generator.
    Random { seed: u64 },
}

impl FromStr for BranchRule {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "first" => Ok(BranchRule::FirstUnassigned),
            "maxocc" => Ok(BranchRule::MaxOccurrence),
            _ => match s.strip_prefix("random:") {
                Some(seed) => seed
                    .parse()
                    .map(|seed| BranchRule::Random { seed })
                    .map_err(|_| format!("bad seed in {s:?}")),
                None => Err(format!(
                    "unknown rule {s:?} (first | maxocc | random:<seed>)"
                )),
            },
        }
    }
}

#[derive(Clone, Debug)]
pub struct DpllStats {
    /// Search nodes entered (root included).
    pub tree_size: u64,
    pub propagations: u64,
    pub max_depth: usize,
}

#[derive(Debug)]
pub enum DpllOutcome {
    Sat {
        witness: Assignment,
        stats: DpllStats,
    },
    Unsat {
        trace: ResolutionTrace,
        stats: DpllStats,
    },
    BudgetExceeded {
        stats: DpllStats,
    },
}

struct Solver {
    n: usize,
    clauses: Vec<Clause>,
    /// Constraint that produced each clause.
    source: Vec<usize>,
    assignment: Vec<Option<i8>>,
    rule: BranchRule,
    rng: ChaCha8Rng,
    nodes: u64,
    budget: u64,
    propagations: u64,
    depth: usize,
    max_depth: usize,
    trace: Vec<TraceStep>,
    /// Trace index of each clause once used as an axiom.
    axiom_step: Vec<Option<usize>>,
}

enum Search {
    Sat,
    /// Trace index of a clause falsified by the assignment outside the
    /// current level.
    Conflict(usize),
}

struct Budget;

#[derive(Clone, Copy, PartialEq, Eq)]
enum ClauseState {
    Satisfied,
    Falsified,
    Unit(usize, i8),
    Open,
}

impl Solver {
    fn clause_state(&self, c: &Clause) -> ClauseState {
        let mut unassigned = None;
        let mut open = 0usize;
        for &(v, s) in c.lits() {
            match self.assignment[v] {
                Some(a) if a == s => return ClauseState::Satisfied,
                Some(_) => {}
                None => {
                    open += 1;
                    if open > 1 {
                        return ClauseState::Open;
                    }
                    unassigned = Some((v, s));
                }
            }
        }
        match unassigned {
            None => ClauseState::Falsified,
            Some((v, s)) => ClauseState::Unit(v, s),
        }
    }

    fn ensure_axiom(&mut self, clause_idx: usize) -> usize {
        if let Some(i) = self.axiom_step[clause_idx] {
            return i;
        }
        self.trace.push(TraceStep {
            clause: self.clauses[clause_idx].clone(),
            rule: TraceRule::Axiom {
                constraint: self.source[clause_idx],
            },
        });
        let i = self.trace.len() - 1;
        self.axiom_step[clause_idx] = Some(i);
        i
    }

    fn add_resolvent(&mut self, left: usize, right: usize, pivot: usize) -> usize {
        let clause = Clause::resolve(&self.trace[left].clause, &self.trace[right].clause, pivot)
            .expect("both parents are falsified under a consistent assignment");
        self.trace.push(TraceStep {
            clause,
            rule: TraceRule::Resolvent { left, right, pivot },
        });
        self.trace.len() - 1
    }

    /// Resolve the propagated variables of this level out of the conflict
    /// clause, newest first.
    fn regress(&mut self, mut step: usize, trail: &[(usize, usize)]) -> usize {
        for &(var, reason) in trail.iter().rev() {
            if self.trace[step].clause.sign_of(var).is_some() {
                let r = self.ensure_axiom(reason);
                step = self.add_resolvent(step, r, var);
            }
        }
        step
    }

    fn pick_branch(&mut self) -> (usize, i8) {
        match self.rule {
            BranchRule::FirstUnassigned => {
                let v = (0..self.n)
                    .find(|&v| self.assignment[v].is_none())
                    .expect("some variable is unassigned when branching");
                (v, 1)
            }
            BranchRule::MaxOccurrence => {
                let mut pos = vec![0u32; self.n];
                let mut neg = vec![0u32; self.n];
                for c in &self.clauses {
                    if self.clause_state(c) != ClauseState::Satisfied {
                        for &(v, s) in c.lits() {
                            if self.assignment[v].is_none() {
                                if s == 1 {
                                    pos[v] += 1;
                                } else {
                                    neg[v] += 1;
                                }
                            }
                        }
                    }
                }
                let v = (0..self.n)
                    .filter(|&v| self.assignment[v].is_none())
                    .max_by_key(|&v| (pos[v] + neg[v], std::cmp::Reverse(v)))
                    .expect("some variable is unassigned when branching");
                (v, if neg[v] > pos[v] { -1 } else { 1 })
            }
            BranchRule::Random { .. } => {
                let free: Vec<usize> = (0..self.n)
                    .filter(|&v| self.assignment[v].is_none())
                    .collect();
                let v = free[self.rng.gen_range(0..free.len())];
                (v, if self.rng.gen::<bool>() { 1 } else { -1 })
            }
        }
    }

    fn search(&mut self) -> Result<Search, Budget> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Budget);
        }
        self.max_depth = self.max_depth.max(self.depth);

        // unit propagation; trail records (variable, reason clause)
        let mut trail: Vec<(usize, usize)> = Vec::new();
        let conflict = 'prop: loop {
            let mut unit = None;
            for (ci, c) in self.clauses.iter().enumerate() {
                match self.clause_state(c) {
                    ClauseState::Falsified => break 'prop Some(ci),
                    ClauseState::Unit(v, s) if unit.is_none() => unit = Some((ci, v, s)),
                    _ => {}
                }
            }
            match unit {
                Some((ci, v, s)) => {
                    self.assignment[v] = Some(s);
                    trail.push((v, ci));
                    self.propagations += 1;
                }
                None => break None,
            }
        };
        if let Some(ci) = conflict {
            let start = self.ensure_axiom(ci);
            let step = self.regress(start, &trail);
            for &(v, _) in &trail {
                self.assignment[v] = None;
            }
            return Ok(Search::Conflict(step));
        }
        if self
            .clauses
            .iter()
            .all(|c| self.clause_state(c) == ClauseState::Satisfied)
        {
            return Ok(Search::Sat);
        }

        let (var, first) = self.pick_branch();
        let mut branch_steps: [usize; 2] = [0; 2];
        for (round, sign) in [first, -first].into_iter().enumerate() {
            self.assignment[var] = Some(sign);
            self.depth += 1;
            let result = self.search();
            self.depth -= 1;
            match result {
                Err(Budget) => return Err(Budget),
                Ok(Search::Sat) => return Ok(Search::Sat),
                Ok(Search::Conflict(step)) => {
                    self.assignment[var] = None;
                    if self.trace[step].clause.sign_of(var).is_none() {
                        // the conflict does not depend on this decision;
                        // still resolve this level's propagations out of it
                        let step = self.regress(step, &trail);
                        for &(v, _) in &trail {
                            self.assignment[v] = None;
                        }
                        return Ok(Search::Conflict(step));
                    }
                    branch_steps[round] = step;
                }
            }
        }
        let step = self.add_resolvent(branch_steps[0], branch_steps[1], var);
        let step = self.regress(step, &trail);
        for &(v, _) in &trail {
            self.assignment[v] = None;
        }
        Ok(Search::Conflict(step))
    }
}

/// Run DPLL on the axiom clauses of `j`. SAT verdicts carry a full witness
/// (free variables default `+1`); UNSAT verdicts carry the extracted
/// refutation, which [`super::check_trace`] accepts.
pub fn dpll_refute(j: &Instance, rule: BranchRule, node_budget: u64) -> DpllOutcome {
    let mut clauses = Vec::new();
    let mut source = Vec::new();
    for (ci, c) in j.constraints().iter().enumerate() {
        for clause in constraint_axioms(c, j.predicate()) {
            clauses.push(clause);
            source.push(ci);
        }
    }
    let seed = match rule {
        BranchRule::Random { seed } => seed,
        _ => 0,
    };
    let axiom_count = clauses.len();
    let mut solver = Solver {
        n: j.n(),
        clauses,
        source,
        assignment: vec![None; j.n()],
        rule,
        rng: ChaCha8Rng::seed_from_u64(seed),
        nodes: 0,
        budget: node_budget,
        propagations: 0,
        depth: 0,
        max_depth: 0,
        trace: Vec::new(),
        axiom_step: vec![None; axiom_count],
    };
    let result = solver.search();
    let stats = DpllStats {
        tree_size: solver.nodes,
        propagations: solver.propagations,
        max_depth: solver.max_depth,
    };
    match result {
        Err(Budget) => DpllOutcome::BudgetExceeded { stats },
        Ok(Search::Sat) => {
            let values = solver
                .assignment
                .iter()
                .map(|v| v.unwrap_or(1))
                .collect::<Vec<i8>>();
            DpllOutcome::Sat {
                witness: Assignment(values),
                stats,
            }
        }
        Ok(Search::Conflict(step)) => {
            debug_assert!(solver.trace[step].clause.is_empty());
            debug_assert_eq!(step + 1, solver.trace.len());
            DpllOutcome::Unsat {
                trace: ResolutionTrace {
                    steps: solver.trace,
                },
                stats,
            }
        }
    }
}
