//! Parity constraints as XOR examples over `{0,1}^n`.
//!
//! In the 0/1 convention a signed parity constraint reads
//! `x_{i_1} ⊕ ... ⊕ x_{i_K} ⊕ β` with `β` the parity of its negative
//! signs. Each constraint becomes the example `(u_C, y_C)`: `u_C` the 0/1
//! indicator of its variables and `y_C = 1 ⊕ β` the right-hand side of the
//! equation form, so that an assignment satisfies the constraint exactly
//! when its subset-parity hypothesis is correct on the example.

use super::{Domain, LabeledSample, ReductionError};
use crate::instance::{Assignment, Instance};
use crate::pred::Family;
use serde::{Deserialize, Serialize};

/// The hypothesis `χ_S(x) = ⊕_{i in S} x_i` over `{0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityHypothesis {
    pub subset: Vec<bool>,
}

impl ParityHypothesis {
    pub fn new(subset: Vec<bool>) -> ParityHypothesis {
        ParityHypothesis { subset }
    }

    /// `S = {i : ψ_i = +1}` for a sign assignment `ψ`.
    pub fn from_assignment(a: &Assignment) -> ParityHypothesis {
        ParityHypothesis {
            subset: a.values().iter().map(|&v| v == 1).collect(),
        }
    }

    pub fn eval(&self, x: &[i8]) -> bool {
        debug_assert_eq!(x.len(), self.subset.len());
        self.subset
            .iter()
            .zip(x)
            .filter(|(&s, &v)| s && v == 1)
            .count()
            % 2
            == 1
    }
}

/// One `{0,1}^n` example per constraint: indicator vector plus the
/// equation's constant bit.
pub fn parity_sample(j: &Instance) -> Result<LabeledSample, ReductionError> {
    match j.predicate().family() {
        Some(Family::Parity { .. }) => {}
        other => {
            return Err(ReductionError::WrongPredicate {
                expected: "parity",
                found: other.map(|f| f.to_string()),
            })
        }
    }
    let n = j.n();
    let examples = j
        .constraints()
        .iter()
        .map(|c| {
            let mut u = vec![0i8; n];
            for &v in &c.vars {
                u[v] = 1;
            }
            let beta = c.signs.iter().filter(|&&s| s == -1).count() % 2;
            (u, beta == 0)
        })
        .collect();
    LabeledSample::new(Domain::Bin(n), examples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{contradictory_parity_pair, Constraint};
    use crate::pred::Predicate;
    use crate::rat;
    use crate::sign::index_point;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn satisfaction_equals_correctness_exhaustively() {
        // n = 5, K = 3: every variable triple, every sign pattern, every
        // assignment
        let p = Predicate::parity(3);
        let n = 5;
        let mut constraints = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if a != b && b != c && a != c {
                        for s in 0..8usize {
                            constraints.push(Constraint::new(vec![a, b, c], index_point(s, 3)));
                        }
                    }
                }
            }
        }
        let j = Instance::new(p.clone(), n, constraints).unwrap();
        let s = parity_sample(&j).unwrap();
        assert_eq!(s.domain(), Domain::Bin(n));
        for psi_idx in 0..(1usize << n) {
            let psi = Assignment::from_index(psi_idx, n);
            let chi = ParityHypothesis::from_assignment(&psi);
            for (c, (u, y)) in j.constraints().iter().zip(s.iter()) {
                let sat = p.eval_index(c.literal_index(&psi));
                assert_eq!(sat, chi.eval(u) == y);
            }
        }
    }

    #[test]
    fn planted_sample_realized_by_plant() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let plant = Assignment::random(12, &mut rng);
        let j = Instance::planted(Predicate::parity(3), 12, 48, &plant, &mut rng).unwrap();
        let s = parity_sample(&j).unwrap();
        let chi = ParityHypothesis::from_assignment(&plant);
        for (u, y) in s.iter() {
            assert_eq!(chi.eval(u), y);
        }
    }

    #[test]
    fn contradictory_pair_sample() {
        let j = contradictory_parity_pair();
        let s = parity_sample(&j).unwrap();
        // same indicator vector, complementary labels: no parity hypothesis
        // gets both right
        assert_eq!(s.examples()[0].0, s.examples()[1].0);
        assert_ne!(s.examples()[0].1, s.examples()[1].1);
    }

    #[test]
    fn almost_satisfying_plant_gives_almost_realizable_sample() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let plant = Assignment::random(10, &mut rng);
        let mut j = Instance::planted(Predicate::parity(3), 10, 40, &plant, &mut rng).unwrap();
        // corrupt 4 of 40 constraints by flipping one sign each
        let (p, n, mut cs) = j.clone().into_parts();
        for c in cs.iter_mut().take(4) {
            c.signs[0] = -c.signs[0];
        }
        j = Instance::new(p, n, cs).unwrap();
        assert_eq!(j.eval_value(&plant).unwrap(), rat(36, 40));
        let s = parity_sample(&j).unwrap();
        let chi = ParityHypothesis::from_assignment(&plant);
        let errs = s.iter().filter(|(u, y)| chi.eval(u) != *y).count();
        assert_eq!(errs, 4);
    }

    #[test]
    fn wrong_predicate_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let j = Instance::random(Predicate::sat(3), 6, 4, &mut rng).unwrap();
        assert!(matches!(
            parity_sample(&j),
            Err(ReductionError::WrongPredicate { .. })
        ));
    }
}
