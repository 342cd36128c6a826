//! Reference learners that exercise the distinguisher harness.

use super::distinguish::{ExampleOracle, LearnParams, Learner, LearnerError};
use super::{point_code, Hypothesis};
use crate::reductions::{Halfspace, ParityHypothesis};
use crate::simplex::{solve, LpOutcome, StandardLp};
use crate::Rat;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;

/// Occam draw count: enough uniform draws that a hypothesis consistent with
/// all of them has small error with good probability, doubled for slack.
fn occam_draws(class_bits: f64, params: &LearnParams) -> u64 {
    let eps = params.epsilon.max(1e-3);
    let raw = (class_bits * std::f64::consts::LN_2 + (1.0 / params.delta).ln()) / eps;
    (2.0 * raw).ceil() as u64 + 8
}

/// GF(2) row over packed words plus the right-hand side.
#[derive(Clone)]
struct XorRow {
    bits: Vec<u64>,
    rhs: bool,
}

/// Gaussian elimination learner for parity samples over `{0,1}^n`.
///
/// Draws are reduced against a growing row-echelon basis; equations that
/// contradict the span so far are skipped, so the final system is a maximal
/// consistent subsystem in draw order. Free variables resolve to 0, pivots
/// in lexicographic order.
pub struct ParityGauss;

impl Learner for ParityGauss {
    fn name(&self) -> &'static str {
        "parity_gauss"
    }

    fn learn(
        &self,
        params: &LearnParams,
        oracle: &mut ExampleOracle<'_>,
    ) -> Result<Hypothesis, LearnerError> {
        let n = oracle.dim();
        let words = n.div_ceil(64);
        let draws = occam_draws(n as f64, params).max(4 * oracle.sample_len() as u64);
        // basis[p] = row with leading (lowest-index) pivot p
        let mut basis: Vec<Option<XorRow>> = vec![None; n];
        for _ in 0..draws {
            let (x, y) = oracle.draw()?;
            let mut row = XorRow {
                bits: vec![0u64; words],
                rhs: y,
            };
            for (j, &v) in x.iter().enumerate() {
                if v == 1 {
                    row.bits[j / 64] |= 1 << (j % 64);
                }
            }
            // reduce against the basis
            while let Some(p) = leading(&row.bits) {
                match &basis[p] {
                    Some(b) => {
                        for (r, w) in row.bits.iter_mut().zip(&b.bits) {
                            *r ^= w;
                        }
                        row.rhs ^= b.rhs;
                    }
                    None => {
                        basis[p] = Some(row);
                        break;
                    }
                }
            }
            // fully reduced: 0 = 0 is redundant, 0 = 1 contradicts the
            // accepted subsystem and is dropped
        }
        // back-substitute with free variables at 0
        let mut subset = vec![false; n];
        for p in (0..n).rev() {
            if let Some(row) = &basis[p] {
                let mut v = row.rhs;
                for (j, s) in subset.iter().enumerate().skip(p + 1) {
                    if *s && row.bits[j / 64] >> (j % 64) & 1 == 1 {
                        v ^= true;
                    }
                }
                subset[p] = v;
            }
        }
        Ok(Hypothesis::Parity(ParityHypothesis::new(subset)))
    }
}

fn leading(bits: &[u64]) -> Option<usize> {
    for (w, &word) in bits.iter().enumerate() {
        if word != 0 {
            return Some(w * 64 + word.trailing_zeros() as usize);
        }
    }
    None
}

/// Halfspace learner: exact feasibility LP with margin 1 on the drawn
/// examples, falling back to pocket perceptron epochs when the LP is
/// infeasible or its solution does not scale to integer weights.
pub struct HalfspaceLp {
    pub perceptron_epochs: usize,
}

impl Default for HalfspaceLp {
    fn default() -> Self {
        HalfspaceLp {
            perceptron_epochs: 64,
        }
    }
}

impl HalfspaceLp {
    fn lp_separate(examples: &[(Vec<i8>, bool)], d: usize) -> Option<Vec<i64>> {
        // variables: w+ (d), w- (d), one slack per example
        let e = examples.len();
        let num_vars = 2 * d + e;
        let mut rows = Vec::with_capacity(e);
        let mut rhs = Vec::with_capacity(e);
        for (i, (x, y)) in examples.iter().enumerate() {
            let mut row = vec![Rat::zero(); num_vars];
            let sgn = if *y { 1i64 } else { -1 };
            for (j, &v) in x.iter().enumerate() {
                // y: <w,x> - s = 1 ; not y: <w,x> + s = -1
                let coef = Rat::from(BigInt::from(sgn * v as i64));
                row[j] = coef.clone();
                row[d + j] = -coef;
            }
            row[2 * d + i] = -Rat::one();
            rows.push(row);
            rhs.push(Rat::one());
        }
        let lp = StandardLp {
            num_vars,
            rows,
            rhs,
            objective: vec![Rat::zero(); num_vars],
        };
        let LpOutcome::Optimal { solution, .. } = solve(&lp) else {
            return None;
        };
        // scale w+ - w- to integers
        let w: Vec<Rat> = (0..d).map(|j| &solution[j] - &solution[d + j]).collect();
        let mut scale = BigInt::one();
        for v in &w {
            scale = scale.lcm(v.denom());
        }
        let mut out = Vec::with_capacity(d);
        for v in &w {
            let scaled = v * Rat::from(scale.clone());
            out.push(scaled.to_integer().to_i64()?);
        }
        if out.iter().all(|&v| v == 0) {
            return None;
        }
        Some(out)
    }

    fn perceptron(&self, examples: &[(Vec<i8>, bool)], d: usize) -> Vec<i64> {
        let mut w = vec![0i64; d];
        let mut best = w.clone();
        let mut best_wrong = usize::MAX;
        for _ in 0..self.perceptron_epochs {
            let mut mistakes = 0usize;
            for (x, y) in examples {
                let dot: i64 = w.iter().zip(x).map(|(&wi, &xi)| wi * xi as i64).sum();
                let target = if *y { 1 } else { -1 };
                if dot * target <= 0 {
                    mistakes += 1;
                    for (wi, &xi) in w.iter_mut().zip(x) {
                        *wi += target * xi as i64;
                    }
                }
            }
            let wrong = examples
                .iter()
                .filter(|(x, y)| {
                    let dot: i64 = w.iter().zip(x).map(|(&wi, &xi)| wi * xi as i64).sum();
                    match dot.cmp(&0) {
                        std::cmp::Ordering::Greater => !*y,
                        std::cmp::Ordering::Less => *y,
                        std::cmp::Ordering::Equal => true,
                    }
                })
                .count();
            if wrong < best_wrong {
                best_wrong = wrong;
                best = w.clone();
            }
            if mistakes == 0 {
                break;
            }
        }
        if best.iter().all(|&v| v == 0) {
            best[0] = 1;
        }
        best
    }
}

impl Learner for HalfspaceLp {
    fn name(&self) -> &'static str {
        "halfspace_lp"
    }

    fn learn(
        &self,
        params: &LearnParams,
        oracle: &mut ExampleOracle<'_>,
    ) -> Result<Hypothesis, LearnerError> {
        let d = oracle.dim();
        let draws = occam_draws(d as f64, params).max(2 * oracle.sample_len() as u64);
        let mut seen = HashMap::new();
        for _ in 0..draws {
            let (x, y) = oracle.draw()?;
            seen.entry(x.to_vec()).or_insert(y);
        }
        let mut examples: Vec<(Vec<i8>, bool)> = seen.into_iter().collect();
        examples.sort_unstable();
        // the exact LP is dense in examples x dimension; beyond that the
        // perceptron takes over directly
        let weights = if examples.len() * d <= 6_000 {
            Self::lp_separate(&examples, d).unwrap_or_else(|| self.perceptron(&examples, d))
        } else {
            self.perceptron(&examples, d)
        };
        Ok(Hypothesis::Halfspace(Halfspace::signs(weights).map_err(
            |_| LearnerError::Unsupported("degenerate all-zero separator".into()),
        )?))
    }
}

/// Memorizes the majority label of every point it sees; tiny domains only.
/// The canonical illustration that the distinguisher's counting argument
/// needs a bound on the learner's output space: over a domain smaller than
/// the sample, memorization fits scattered samples too.
pub struct LookupMemorizer {
    pub draw_factor: u64,
}

impl Default for LookupMemorizer {
    fn default() -> Self {
        LookupMemorizer { draw_factor: 16 }
    }
}

impl Learner for LookupMemorizer {
    fn name(&self) -> &'static str {
        "memorizer"
    }

    fn learn(
        &self,
        _params: &LearnParams,
        oracle: &mut ExampleOracle<'_>,
    ) -> Result<Hypothesis, LearnerError> {
        let dim = oracle.dim();
        if dim > 60 {
            return Err(LearnerError::Unsupported(format!(
                "domain dimension {dim} too large to memorize"
            )));
        }
        let draws = self.draw_factor * oracle.sample_len() as u64;
        let mut votes: HashMap<u64, i64> = HashMap::new();
        for _ in 0..draws {
            let (x, y) = oracle.draw()?;
            *votes.entry(point_code(x)).or_insert(0) += if y { 1 } else { -1 };
        }
        let map = votes
            .into_iter()
            .map(|(k, v)| (k, v > 0))
            .collect::<HashMap<_, _>>();
        Ok(Hypothesis::Lookup {
            dim,
            map,
            default: false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{contradictory_parity_pair, Assignment, Instance};
    use crate::lab::distinguish::DistinguishBudget;
    use crate::lab::empirical_error;
    use crate::pred::Predicate;
    use crate::rat;
    use crate::reductions::{parity_sample, Domain, LabeledSample};

    fn learn_on(learner: &dyn Learner, s: &LabeledSample, eps: f64, seed: u64) -> Hypothesis {
        let params = LearnParams {
            n: s.domain().dim(),
            epsilon: eps,
            delta: 0.25,
        };
        let mut oracle = ExampleOracle::new(s, seed, DistinguishBudget::default());
        learner.learn(&params, &mut oracle).unwrap()
    }

    #[test]
    fn parity_gauss_solves_consistent_systems() {
        let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(3);
        let plant = Assignment::random(16, &mut rng);
        let j = Instance::planted(Predicate::parity(3), 16, 64, &plant, &mut rng).unwrap();
        let s = parity_sample(&j).unwrap();
        let h = learn_on(&ParityGauss, &s, 0.1, 42);
        assert_eq!(empirical_error(&h, &s).unwrap(), rat(0, 1));
    }

    #[test]
    fn parity_gauss_on_contradictory_pair() {
        let s = parity_sample(&contradictory_parity_pair()).unwrap();
        let h = learn_on(&ParityGauss, &s, 0.1, 7);
        assert_eq!(empirical_error(&h, &s).unwrap(), rat(1, 2));
    }

    #[test]
    fn halfspace_lp_separates_toy_plane() {
        // four points in the plane, lifted with a constant coordinate
        let s = LabeledSample::new(
            Domain::Tri(3),
            vec![
                (vec![1, 1, 1], true),
                (vec![1, -1, 1], true),
                (vec![-1, 1, 1], false),
                (vec![-1, -1, 1], false),
            ],
        )
        .unwrap();
        let h = learn_on(&HalfspaceLp::default(), &s, 0.05, 5);
        assert_eq!(empirical_error(&h, &s).unwrap(), rat(0, 1));
    }

    #[test]
    fn halfspace_perceptron_fallback_on_unseparable() {
        let s = LabeledSample::new(
            Domain::Tri(2),
            vec![
                (vec![1, 1], true),
                (vec![-1, -1], true),
                (vec![1, -1], false),
                (vec![-1, 1], false),
            ],
        )
        .unwrap();
        // XOR labels: nothing separates, but the learner still returns
        let h = learn_on(&HalfspaceLp::default(), &s, 0.05, 5);
        assert!(empirical_error(&h, &s).unwrap() >= rat(1, 4));
    }

    #[test]
    fn memorizer_fits_tiny_domains() {
        let examples: Vec<(Vec<i8>, bool)> = (0..8)
            .map(|i| (crate::sign::index_point(i, 3), i % 3 == 0))
            .collect();
        let s = LabeledSample::new(Domain::Pm(3), examples).unwrap();
        let h = learn_on(&LookupMemorizer::default(), &s, 0.1, 11);
        assert_eq!(empirical_error(&h, &s).unwrap(), rat(0, 1));
    }
}
