//! The constraint-expansion hypothesis behind the width lower bound.
//!
//! For a subset `I` of constraints, a member is *expanding* when at least
//! `K - VAR_0(P) - 1` of its variables appear in no other constraint of
//! `I`. When in every subset of size at most `l` strictly more than half
//! the members expand, the refutation width of the instance is at least
//! `l/6`, and the short-proof bound turns that into a length exponent of
//! order `width^2 / n`.

use crate::instance::Instance;
use crate::pred::PredError;
use crate::rat;
use crate::Rat;
use rand::seq::index::sample as index_sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cap on the number of subsets enumerated exhaustively.
pub const EXHAUSTIVE_SUBSET_LIMIT: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExpansionOutcome {
    VerifiedExhaustive,
    VerifiedSampled { trials: u64 },
    Violated { subset: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct ExpansionReport {
    pub outcome: ExpansionOutcome,
    pub l: usize,
    /// `K - VAR_0(P) - 1`, clamped at zero (a nonpositive requirement is
    /// vacuously met).
    pub private_needed: usize,
    /// The implied width bound `l/6`, meaningful on verified outcomes.
    pub width_bound: Rat,
}

fn private_counts(j: &Instance, subset: &[usize]) -> Vec<usize> {
    let mut use_count = std::collections::HashMap::new();
    for &ci in subset {
        for &v in &j.constraints()[ci].vars {
            *use_count.entry(v).or_insert(0usize) += 1;
        }
    }
    subset
        .iter()
        .map(|&ci| {
            j.constraints()[ci]
                .vars
                .iter()
                .filter(|&&v| use_count[&v] == 1)
                .count()
        })
        .collect()
}

fn subset_ok(j: &Instance, subset: &[usize], needed: usize) -> bool {
    if needed == 0 {
        return true;
    }
    let expanding = private_counts(j, subset)
        .into_iter()
        .filter(|&c| c >= needed)
        .count();
    2 * expanding > subset.len()
}

fn binomial_u128(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r.min(n - r) {
        acc = acc.saturating_mul((n - i) as u128) / (i + 1) as u128;
        if acc > EXHAUSTIVE_SUBSET_LIMIT * 1000 {
            return acc;
        }
    }
    acc
}

/// Check the expansion hypothesis at level `l`: every subset of 2..=l
/// constraints must have a strict majority of expanding members.
/// Exhaustive when the subset count allows, otherwise `subset_trials`
/// random subsets with sizes cycling over 2..=l.
pub fn expansion_check(
    j: &Instance,
    l: usize,
    subset_trials: u64,
    seed: u64,
) -> Result<ExpansionReport, PredError> {
    let k = j.predicate().arity();
    let var0 = match j.predicate().var0() {
        Ok(w) => w.size,
        Err(PredError::ConstantOne) => k, // nothing ever forces 0
        Err(e) => return Err(e),
    };
    let needed = (k as i64 - var0 as i64 - 1).max(0) as usize;
    let m = j.m();
    let l = l.min(m);
    let width_bound = rat(l as i64, 6);

    let report = |outcome| ExpansionReport {
        outcome,
        l,
        private_needed: needed,
        width_bound: width_bound.clone(),
    };

    if needed == 0 {
        // vacuous hypothesis; exhaustive by definition
        return Ok(report(ExpansionOutcome::VerifiedExhaustive));
    }
    let total: u128 = (2..=l).map(|t| binomial_u128(m, t)).sum();
    if total <= EXHAUSTIVE_SUBSET_LIMIT {
        for t in 2..=l {
            let mut subset: Vec<usize> = (0..t).collect();
            loop {
                if !subset_ok(j, &subset, needed) {
                    return Ok(report(ExpansionOutcome::Violated { subset }));
                }
                if !next_combination(&mut subset, m) {
                    break;
                }
            }
        }
        Ok(report(ExpansionOutcome::VerifiedExhaustive))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..subset_trials {
            let t = 2 + (trial as usize % (l - 1));
            let subset: Vec<usize> = index_sample(&mut rng, m, t).into_vec();
            if !subset_ok(j, &subset, needed) {
                let mut s = subset;
                s.sort_unstable();
                return Ok(report(ExpansionOutcome::Violated { subset: s }));
            }
        }
        Ok(report(ExpansionOutcome::VerifiedSampled {
            trials: subset_trials,
        }))
    }
}

fn next_combination(coords: &mut [usize], n: usize) -> bool {
    let r = coords.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if coords[i] < n - (r - i) {
            coords[i] += 1;
            for j in i + 1..r {
                coords[j] = coords[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Constant-free diagnostic for the short-refutation bound: a refutation of
/// width `w` over `n` variables forces length at least exponential in
/// `w^2 / n`, up to an unstated constant. Reports the exponent scale only.
pub fn bw_length_exponent(width_lb: &Rat, n: usize) -> f64 {
    use num_traits::ToPrimitive;
    let w = width_lb.to_f64().unwrap_or(0.0);
    w * w / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{Constraint, Instance};
    use crate::pred::Predicate;

    #[test]
    fn disjoint_constraints_verify() {
        let j = Instance::new(
            Predicate::maj(5),
            10,
            vec![
                Constraint::new(vec![0, 1, 2, 3, 4], vec![1; 5]),
                Constraint::new(vec![5, 6, 7, 8, 9], vec![1; 5]),
            ],
        )
        .unwrap();
        let rep = expansion_check(&j, 2, 100, 0).unwrap();
        assert_eq!(rep.outcome, ExpansionOutcome::VerifiedExhaustive);
        assert_eq!(rep.private_needed, 5 - 3 - 1);
        assert_eq!(rep.width_bound, rat(2, 6));
    }

    #[test]
    fn identical_constraints_violate() {
        let c = Constraint::new(vec![0, 1, 2, 3, 4], vec![1; 5]);
        let j = Instance::new(Predicate::maj(5), 10, vec![c.clone(), c.clone(), c]).unwrap();
        let rep = expansion_check(&j, 2, 100, 0).unwrap();
        match rep.outcome {
            ExpansionOutcome::Violated { subset } => assert_eq!(subset.len(), 2),
            other => panic!("expected violation, got {other:?}"),
        }
    }

    #[test]
    fn vacuous_threshold_verifies_trivially() {
        // SAT_3 has full 0-variability, so the private-variable requirement
        // is nonpositive and the hypothesis holds as stated
        let c = Constraint::new(vec![0, 1, 2], vec![1, 1, 1]);
        let j = Instance::new(Predicate::sat(3), 5, vec![c.clone(), c]).unwrap();
        let rep = expansion_check(&j, 2, 10, 0).unwrap();
        assert_eq!(rep.private_needed, 0);
        assert_eq!(rep.outcome, ExpansionOutcome::VerifiedExhaustive);
    }

    #[test]
    fn sampled_path_agrees_with_exhaustive_on_overlap() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(10);
        let j = Instance::random(Predicate::maj(5), 40, 12, &mut rng).unwrap();
        let exhaustive = expansion_check(&j, 3, 0, 0).unwrap();
        // force the sampled path by dropping the limit: emulate by sampling
        // directly against the same predicate outcome
        let sampled_ok = (0..2000u64).all(|t| {
            let tsz = 2 + (t as usize % 2);
            let subset = index_sample(&mut rng, j.m(), tsz).into_vec();
            subset_ok(&j, &subset, exhaustive.private_needed)
        });
        assert_eq!(
            matches!(exhaustive.outcome, ExpansionOutcome::VerifiedExhaustive),
            sampled_ok
        );
    }

    #[test]
    fn bw_exponent_edges() {
        assert_eq!(bw_length_exponent(&rat(0, 1), 30), 0.0);
        assert_eq!(bw_length_exponent(&rat(30, 1), 30), 30.0);
    }
}
