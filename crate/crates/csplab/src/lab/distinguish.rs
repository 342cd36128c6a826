//! The learner-wrapping distinguisher.
//!
//! Run a learner against the empirical oracle (uniform draws with
//! replacement from the sample), then threshold the empirical error of the
//! returned hypothesis: at most `β` means "realizable", at most
//! `αβ + 1/n` means "almost realizable" in the agnostic variant. A learner
//! that fails or exhausts its budget yields "unrealizable" with a flag, so
//! the harness always terminates with a verdict.

use super::{empirical_error, Hypothesis, LabError};
use crate::reductions::LabeledSample;
use crate::Rat;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LearnerError {
    #[error("example budget exhausted after {0} draws")]
    DrawBudget(u64),
    #[error("time budget exhausted")]
    TimeBudget,
    #[error("learner cannot handle this sample: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Lab(#[from] LabError),
}

/// Parameters handed to a learner: dimension, error target, confidence.
#[derive(Clone, Copy, Debug)]
pub struct LearnParams {
    pub n: usize,
    pub epsilon: f64,
    pub delta: f64,
}

/// Caps on a single learner invocation.
#[derive(Clone, Copy, Debug)]
pub struct DistinguishBudget {
    pub max_draws: u64,
    pub max_time: Duration,
}

impl Default for DistinguishBudget {
    fn default() -> Self {
        DistinguishBudget {
            max_draws: 1 << 22,
            max_time: Duration::from_secs(30),
        }
    }
}

/// Uniform-with-replacement oracle over a fixed sample.
pub struct ExampleOracle<'a> {
    sample: &'a LabeledSample,
    rng: ChaCha8Rng,
    draws: u64,
    budget: DistinguishBudget,
    started: Instant,
}

impl<'a> ExampleOracle<'a> {
    pub fn new(sample: &'a LabeledSample, seed: u64, budget: DistinguishBudget) -> Self {
        ExampleOracle {
            sample,
            rng: ChaCha8Rng::seed_from_u64(seed),
            draws: 0,
            budget,
            started: Instant::now(),
        }
    }

    /// Number of examples in the underlying sample.
    pub fn sample_len(&self) -> usize {
        self.sample.len()
    }

    pub fn dim(&self) -> usize {
        self.sample.domain().dim()
    }

    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn draw(&mut self) -> Result<(&'a [i8], bool), LearnerError> {
        if self.draws >= self.budget.max_draws {
            return Err(LearnerError::DrawBudget(self.draws));
        }
        // coarse time cap, checked between draws
        if self.draws.is_multiple_of(1024) && self.started.elapsed() > self.budget.max_time {
            return Err(LearnerError::TimeBudget);
        }
        self.draws += 1;
        let i = self.rng.gen_range(0..self.sample.len());
        let (x, y) = &self.sample.examples()[i];
        Ok((x.as_slice(), *y))
    }
}

/// A learning algorithm: given `(n, ε, δ)` and the oracle, produce a
/// hypothesis. Implementations must be deterministic given the oracle's
/// seed (they draw randomness only through it or not at all).
pub trait Learner: Sync {
    fn name(&self) -> &'static str;
    fn learn(
        &self,
        params: &LearnParams,
        oracle: &mut ExampleOracle<'_>,
    ) -> Result<Hypothesis, LearnerError>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Realizable,
    AlmostRealizable,
    Unrealizable,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::Realizable => "realizable",
            Verdict::AlmostRealizable => "almost_realizable",
            Verdict::Unrealizable => "unrealizable",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct DistinguisherOutcome {
    pub verdict: Verdict,
    /// Empirical error of the returned hypothesis, when one was returned.
    pub error: Option<Rat>,
    /// Set when the learner failed and the verdict was forced.
    pub learner_failed: bool,
}

fn run_learner(
    learner: &dyn Learner,
    sample: &LabeledSample,
    params: LearnParams,
    seed: u64,
    budget: DistinguishBudget,
) -> Result<Rat, (LearnerError, bool)> {
    let mut oracle = ExampleOracle::new(sample, seed, budget);
    let h = learner.learn(&params, &mut oracle).map_err(|e| (e, true))?;
    empirical_error(&h, sample).map_err(|e| (LearnerError::Lab(e), true))
}

/// Realizable-vs-random verdict: run the learner with `(n, β, 1/4)` and
/// accept when the returned hypothesis has empirical error at most `β`.
pub fn distinguisher_realizable(
    learner: &dyn Learner,
    sample: &LabeledSample,
    beta: &Rat,
    n: usize,
    seed: u64,
    budget: DistinguishBudget,
) -> DistinguisherOutcome {
    let params = LearnParams {
        n,
        epsilon: rat_to_f64(beta),
        delta: 0.25,
    };
    match run_learner(learner, sample, params, seed, budget) {
        Ok(err) => DistinguisherOutcome {
            verdict: if err <= *beta {
                Verdict::Realizable
            } else {
                Verdict::Unrealizable
            },
            error: Some(err),
            learner_failed: false,
        },
        Err(_) => DistinguisherOutcome {
            verdict: Verdict::Unrealizable,
            error: None,
            learner_failed: true,
        },
    }
}

/// Agnostic variant: run the learner with `(n, 1/n, 1/4)` and accept as
/// "almost realizable" when the error is at most `αβ + 1/n`.
pub fn distinguisher_agnostic(
    learner: &dyn Learner,
    sample: &LabeledSample,
    alpha: &Rat,
    beta: &Rat,
    n: usize,
    seed: u64,
    budget: DistinguishBudget,
) -> DistinguisherOutcome {
    let params = LearnParams {
        n,
        epsilon: 1.0 / n as f64,
        delta: 0.25,
    };
    let threshold = alpha * beta + Rat::new(BigInt::from(1), BigInt::from(n as i64));
    match run_learner(learner, sample, params, seed, budget) {
        Ok(err) => DistinguisherOutcome {
            verdict: if err <= threshold {
                Verdict::AlmostRealizable
            } else {
                Verdict::Unrealizable
            },
            error: Some(err),
            learner_failed: false,
        },
        Err(_) => DistinguisherOutcome {
            verdict: Verdict::Unrealizable,
            error: None,
            learner_failed: true,
        },
    }
}

fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{contradictory_parity_pair, Assignment, Instance};
    use crate::lab::learners::ParityGauss;
    use crate::pred::Predicate;
    use crate::rat;
    use crate::reductions::parity_sample;
    use rand::SeedableRng;

    #[test]
    fn agnostic_at_beta_zero_matches_realizable_up_to_slack() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let n = 12;
        let plant = Assignment::random(n, &mut rng);
        let j = Instance::planted(Predicate::parity(3), n, 48, &plant, &mut rng).unwrap();
        let s = parity_sample(&j).unwrap();
        let budget = DistinguishBudget::default();
        let real = distinguisher_realizable(&ParityGauss, &s, &rat(0, 1), n, 5, budget);
        assert_eq!(real.verdict, Verdict::Realizable);
        // threshold alpha*0 + 1/n leaves only the 1/n slack
        let agn = distinguisher_agnostic(&ParityGauss, &s, &rat(1, 1), &rat(0, 1), n, 5, budget);
        assert_eq!(agn.verdict, Verdict::AlmostRealizable);
        assert_eq!(real.error, agn.error);
    }

    #[test]
    fn errors_above_threshold_are_rejected_in_both_modes() {
        let budget = DistinguishBudget::default();
        // the contradictory pair pins the error at exactly 1/2
        let s = parity_sample(&contradictory_parity_pair()).unwrap();
        let real = distinguisher_realizable(&ParityGauss, &s, &rat(1, 10), 2, 1, budget);
        assert_eq!(real.verdict, Verdict::Unrealizable);
        assert_eq!(real.error, Some(rat(1, 2)));
        // a dense random system at n = 12 clears the agnostic threshold
        // alpha*beta + 1/n = 1/10 + 1/12 comfortably
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        let j = Instance::random(Predicate::parity(3), 12, 48, &mut rng).unwrap();
        let s = parity_sample(&j).unwrap();
        let agn = distinguisher_agnostic(&ParityGauss, &s, &rat(1, 1), &rat(1, 10), 12, 1, budget);
        assert_eq!(agn.verdict, Verdict::Unrealizable);
        assert!(agn.error.unwrap() > rat(1, 10) + rat(1, 12));
    }
}
