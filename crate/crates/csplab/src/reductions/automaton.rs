//! Layered acyclic automata and the DNF compiler.
//!
//! The compiler tracks, after each input bit, the set of clauses not yet
//! violated. With `c` clauses that is one state per (position, subset)
//! pair: `n * 2^c` states plus the start state, accepting exactly when the
//! surviving set at the end is nonempty — which on complete inputs means
//! some clause is fully satisfied.

use super::{DnfFormula, ReductionError};
use serde::{Deserialize, Serialize};

/// Refuse formulas whose subset lattice would not fit in memory.
pub const AUTOMATON_CLAUSE_BUDGET: usize = 20;

/// Deterministic acyclic automaton over `{-1,+1}`, total on inputs of
/// length `input_len`. `delta[s]` is `[next on -1, next on +1]`, present
/// exactly for states below the final layer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Automaton {
    pub input_len: usize,
    pub start: u32,
    pub layer: Vec<u32>,
    pub delta: Vec<Option<[u32; 2]>>,
    pub accepting: Vec<bool>,
}

impl Automaton {
    pub fn num_states(&self) -> usize {
        self.layer.len()
    }

    pub fn eval(&self, x: &[i8]) -> bool {
        debug_assert_eq!(x.len(), self.input_len);
        let mut state = self.start;
        for &v in x {
            let d = self.delta[state as usize].expect("total below the final layer");
            state = d[crate::sign::bit(v)];
        }
        self.accepting[state as usize]
    }

    /// Structural invariants: transitions exist exactly below the final
    /// layer and always step one layer down.
    pub fn validate(&self) -> Result<(), ReductionError> {
        let bad = |msg: String| ReductionError::Format(msg);
        if self.start as usize >= self.num_states() {
            return Err(bad("start out of range".into()));
        }
        for (s, d) in self.delta.iter().enumerate() {
            let l = self.layer[s];
            match d {
                Some([a, b]) => {
                    if l as usize >= self.input_len {
                        return Err(bad(format!(
                            "state {s} in the final layer has a transition"
                        )));
                    }
                    for t in [a, b] {
                        if *t as usize >= self.num_states() || self.layer[*t as usize] != l + 1 {
                            return Err(bad(format!("state {s} does not step one layer down")));
                        }
                    }
                }
                None => {
                    if (l as usize) < self.input_len {
                        return Err(bad(format!("state {s} below the final layer is partial")));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Compile a DNF formula into the layered subset automaton with exactly
/// `n * 2^c + 1` states.
pub fn dnf_to_automaton(f: &DnfFormula) -> Result<Automaton, ReductionError> {
    let c = f.clause_count();
    if c > AUTOMATON_CLAUSE_BUDGET {
        return Err(ReductionError::ClauseBudget(c));
    }
    let n = f.dim;
    let subsets = 1usize << c;
    // literal demanded by clause t on variable i, if any
    let mut demands: Vec<Vec<(usize, i8)>> = vec![Vec::new(); n];
    for (t, clause) in f.clauses.iter().enumerate() {
        for &(v, s) in clause {
            demands[v].push((t, s));
        }
    }
    // state ids: 0 = start, then (i, a) -> 1 + (i-1)*subsets + a for i in 1..=n
    let id = |i: usize, a: usize| (1 + (i - 1) * subsets + a) as u32;
    let num_states = 1 + n * subsets;
    let mut layer = vec![0u32; num_states];
    let mut delta: Vec<Option<[u32; 2]>> = vec![None; num_states];
    let mut accepting = vec![false; num_states];

    let survive = |a: usize, i: usize, v: i8| -> usize {
        let mut out = a;
        for &(t, s) in &demands[i] {
            if s != v {
                out &= !(1 << t);
            }
        }
        out
    };

    let full = subsets - 1;
    delta[0] = Some([id(1, survive(full, 0, -1)), id(1, survive(full, 0, 1))]);
    for i in 1..=n {
        for a in 0..subsets {
            let s = id(i, a) as usize;
            layer[s] = i as u32;
            if i < n {
                delta[s] = Some([id(i + 1, survive(a, i, -1)), id(i + 1, survive(a, i, 1))]);
            } else {
                accepting[s] = a != 0;
            }
        }
    }
    let auto = Automaton {
        input_len: n,
        start: 0,
        layer,
        delta,
        accepting,
    };
    debug_assert!(auto.validate().is_ok());
    Ok(auto)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sign::index_point;

    fn exhaustive_equal(f: &DnfFormula) {
        let a = dnf_to_automaton(f).unwrap();
        assert_eq!(a.num_states(), f.dim * (1 << f.clause_count()) + 1);
        a.validate().unwrap();
        for idx in 0..(1usize << f.dim) {
            let x = index_point(idx, f.dim);
            assert_eq!(a.eval(&x), f.eval(&x), "input {idx}");
        }
    }

    #[test]
    fn language_equivalence_small_formulas() {
        // single all-positive clause accepts only the all-ones input
        let f = DnfFormula::new(6, vec![(0..6).map(|v| (v, 1i8)).collect()]).unwrap();
        let a = dnf_to_automaton(&f).unwrap();
        for idx in 0..(1usize << 6) {
            assert_eq!(a.eval(&index_point(idx, 6)), idx == (1 << 6) - 1);
        }
        exhaustive_equal(&f);

        exhaustive_equal(&DnfFormula::new(5, vec![]).unwrap());
        exhaustive_equal(
            &DnfFormula::new(
                7,
                vec![
                    vec![(0, 1), (3, -1)],
                    vec![(2, -1), (4, 1), (6, 1)],
                    vec![(1, 1)],
                    vec![(5, -1), (0, -1)],
                ],
            )
            .unwrap(),
        );
        // an empty clause makes the formula total
        exhaustive_equal(&DnfFormula::new(4, vec![vec![], vec![(1, 1)]]).unwrap());
    }

    #[test]
    fn clause_budget_enforced() {
        let clauses: Vec<Vec<(usize, i8)>> = (0..21).map(|_| vec![(0, 1)]).collect();
        // duplicate-variable clauses are fine across clauses
        let f = DnfFormula::new(2, clauses).unwrap();
        assert!(matches!(
            dnf_to_automaton(&f),
            Err(ReductionError::ClauseBudget(21))
        ));
    }

    #[test]
    fn serde_round_trip() {
        let f = DnfFormula::new(4, vec![vec![(0, 1), (2, -1)], vec![(3, 1)]]).unwrap();
        let a = dnf_to_automaton(&f).unwrap();
        let js = serde_json::to_string(&a).unwrap();
        let back: Automaton = serde_json::from_str(&js).unwrap();
        assert_eq!(a, back);
    }
}
