//! Clause-level resolution machinery.
//!
//! A constraint's axioms are the canonical clauses forbidding each of its
//! falsifying literal patterns; an assignment satisfies all of them exactly
//! when it satisfies the constraint. Traces are sequences of clauses, each
//! an axiom (subsumption-weakened) or a resolvent of two earlier entries,
//! refutations ending in the empty clause.

mod dpll;
mod expansion;

pub use dpll::{dpll_refute, BranchRule, DpllOutcome, DpllStats};
pub use expansion::{bw_length_exponent, expansion_check, ExpansionOutcome, ExpansionReport};

use crate::instance::{Constraint, Instance};
use crate::pred::Predicate;
use crate::sign::index_coord;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RefuteError {
    #[error("trace step {index}: {reason}")]
    Trace { index: usize, reason: String },
    #[error("trace does not end with the empty clause")]
    NoEmptyClause,
    #[error("clause has duplicate variable {0}")]
    DuplicateVariable(usize),
    #[error("format error: {0}")]
    Format(String),
}

/// Disjunction of literals over distinct variables; empty is ⊥.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    /// Sorted by variable; signs are `+1`/`-1`.
    lits: Vec<(usize, i8)>,
}

impl Clause {
    pub fn new(mut lits: Vec<(usize, i8)>) -> Result<Clause, RefuteError> {
        lits.sort_unstable();
        for w in lits.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(RefuteError::DuplicateVariable(w[0].0));
            }
        }
        Ok(Clause { lits })
    }

    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn width(&self) -> usize {
        self.lits.len()
    }

    pub fn lits(&self) -> &[(usize, i8)] {
        &self.lits
    }

    pub fn sign_of(&self, var: usize) -> Option<i8> {
        self.lits
            .binary_search_by_key(&var, |&(v, _)| v)
            .ok()
            .map(|i| self.lits[i].1)
    }

    /// `self` subsumes `other`: every literal of `self` appears in `other`.
    pub fn subsumes(&self, other: &Clause) -> bool {
        self.lits.iter().all(|&(v, s)| other.sign_of(v) == Some(s))
    }

    /// Resolve two clauses on `pivot`; they must carry it with opposite
    /// signs and agree on every shared variable.
    pub fn resolve(a: &Clause, b: &Clause, pivot: usize) -> Result<Clause, RefuteError> {
        let (sa, sb) = match (a.sign_of(pivot), b.sign_of(pivot)) {
            (Some(sa), Some(sb)) if sa != sb => (sa, sb),
            _ => {
                return Err(RefuteError::Format(format!(
                    "pivot {pivot} does not appear with opposite signs"
                )))
            }
        };
        let _ = (sa, sb);
        let mut lits: Vec<(usize, i8)> = a
            .lits
            .iter()
            .chain(b.lits.iter())
            .copied()
            .filter(|&(v, _)| v != pivot)
            .collect();
        lits.sort_unstable();
        lits.dedup();
        for w in lits.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(RefuteError::Format(format!(
                    "resolvent would carry variable {} with both signs",
                    w[0].0
                )));
            }
        }
        Ok(Clause { lits })
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lits: Vec<String> = self
            .lits
            .iter()
            .map(|&(v, s)| ((s as i64) * (v as i64 + 1)).to_string())
            .collect();
        f.write_str(&lits.join(" "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceRule {
    /// Implied by the named constraint (subsumption against its axioms).
    Axiom { constraint: usize },
    /// Resolution of two earlier steps on `pivot`.
    Resolvent {
        left: usize,
        right: usize,
        pivot: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub clause: Clause,
    pub rule: TraceRule,
}

/// A resolution derivation; a refutation when the last clause is ⊥.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionTrace {
    pub steps: Vec<TraceStep>,
}

impl ResolutionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn width(&self) -> usize {
        self.steps
            .iter()
            .map(|s| s.clause.width())
            .max()
            .unwrap_or(0)
    }

    /// Text form, one step per line:
    /// `idx : lits | AXIOM j` or `idx : lits | RES i1 i2 pivot`.
    /// Step indices are 0-based; literals are signed 1-based variables, and
    /// the pivot is a 1-based variable.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            match step.rule {
                TraceRule::Axiom { constraint } => {
                    out.push_str(&format!("{} : {} | AXIOM {}\n", i, step.clause, constraint))
                }
                TraceRule::Resolvent { left, right, pivot } => out.push_str(&format!(
                    "{} : {} | RES {} {} {}\n",
                    i,
                    step.clause,
                    left,
                    right,
                    pivot + 1
                )),
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<ResolutionTrace, RefuteError> {
        let fmt = |msg: String| RefuteError::Format(msg);
        let mut steps = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (head, rule) = line
                .split_once('|')
                .ok_or_else(|| fmt(format!("missing rule part: {line:?}")))?;
            let (idx, lits_part) = head
                .split_once(':')
                .ok_or_else(|| fmt(format!("missing index part: {line:?}")))?;
            let idx: usize = idx
                .trim()
                .parse()
                .map_err(|_| fmt(format!("bad index in {line:?}")))?;
            if idx != steps.len() {
                return Err(fmt(format!("step {idx} out of order")));
            }
            let mut lits = Vec::new();
            for tok in lits_part.split_whitespace() {
                let lit: i64 = tok
                    .parse()
                    .map_err(|_| fmt(format!("bad literal {tok:?}")))?;
                if lit == 0 {
                    return Err(fmt("literal 0 is not allowed".into()));
                }
                lits.push((
                    lit.unsigned_abs() as usize - 1,
                    if lit > 0 { 1 } else { -1 },
                ));
            }
            let clause = Clause::new(lits)?;
            let toks: Vec<&str> = rule.split_whitespace().collect();
            let rule = match toks.as_slice() {
                ["AXIOM", j] => TraceRule::Axiom {
                    constraint: j.parse().map_err(|_| fmt("bad axiom index".into()))?,
                },
                ["RES", a, b, p] => {
                    let pivot: usize = p.parse().map_err(|_| fmt("bad pivot".into()))?;
                    if pivot == 0 {
                        return Err(fmt("pivot variables are 1-based".into()));
                    }
                    TraceRule::Resolvent {
                        left: a.parse().map_err(|_| fmt("bad parent index".into()))?,
                        right: b.parse().map_err(|_| fmt("bad parent index".into()))?,
                        pivot: pivot - 1,
                    }
                }
                _ => return Err(fmt(format!("bad rule {rule:?}"))),
            };
            steps.push(TraceStep { clause, rule });
        }
        Ok(ResolutionTrace { steps })
    }
}

/// Canonical axiom clauses of a constraint: one width-`K` clause per
/// falsifying pattern, in ascending pattern order. Sound and complete: an
/// assignment satisfies all of them iff it satisfies the constraint.
pub fn constraint_axioms(c: &Constraint, p: &Predicate) -> Vec<Clause> {
    let k = c.arity();
    let mut out = Vec::new();
    for pattern in 0..(1usize << k) {
        if !p.eval_index(pattern) {
            let lits = c
                .vars
                .iter()
                .zip(&c.signs)
                .enumerate()
                .map(|(l, (&v, &s))| (v, -s * index_coord(pattern, l)))
                .collect();
            out.push(Clause::new(lits).expect("distinct constraint variables"));
        }
    }
    out
}

/// Verify a trace against an instance: axiom steps must be subsumed by one
/// of the named constraint's axioms, resolvent steps must be exact
/// resolutions of earlier steps, and a refutation must end in ⊥.
pub fn check_trace(j: &Instance, trace: &ResolutionTrace) -> Result<(), RefuteError> {
    let mut axiom_cache: Vec<Option<Vec<Clause>>> = vec![None; j.m()];
    for (i, step) in trace.steps.iter().enumerate() {
        match step.rule {
            TraceRule::Axiom { constraint } => {
                if constraint >= j.m() {
                    return Err(RefuteError::Trace {
                        index: i,
                        reason: format!("constraint {constraint} out of range"),
                    });
                }
                let axioms = axiom_cache[constraint].get_or_insert_with(|| {
                    constraint_axioms(&j.constraints()[constraint], j.predicate())
                });
                if !axioms.iter().any(|a| a.subsumes(&step.clause)) {
                    return Err(RefuteError::Trace {
                        index: i,
                        reason: format!("clause is not implied by constraint {constraint}"),
                    });
                }
            }
            TraceRule::Resolvent { left, right, pivot } => {
                if left >= i || right >= i {
                    return Err(RefuteError::Trace {
                        index: i,
                        reason: "resolvent references a later step".into(),
                    });
                }
                let expect =
                    Clause::resolve(&trace.steps[left].clause, &trace.steps[right].clause, pivot)
                        .map_err(|e| RefuteError::Trace {
                        index: i,
                        reason: e.to_string(),
                    })?;
                if expect != step.clause {
                    return Err(RefuteError::Trace {
                        index: i,
                        reason: format!("stated clause differs from the resolvent ({expect})"),
                    });
                }
            }
        }
    }
    match trace.steps.last() {
        Some(last) if last.clause.is_empty() => Ok(()),
        _ => Err(RefuteError::NoEmptyClause),
    }
}
