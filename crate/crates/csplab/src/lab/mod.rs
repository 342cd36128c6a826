//! Scattering certification and the learner-wrapping distinguisher.
//!
//! A sample ensemble is scattered when no fixed hypothesis is likely to fit
//! a draw; a learner is turned into a realizable-vs-random decision
//! procedure by thresholding the empirical error of whatever hypothesis it
//! returns. Reference learners close the loop end to end: GF(2)
//! elimination for parity samples, an exact feasibility LP (with perceptron
//! fallback) for halfspaces, and a lookup memorizer for tiny domains.

mod distinguish;
mod ensemble;
mod experiment;
mod learners;
pub mod stats;

pub use distinguish::{
    distinguisher_agnostic, distinguisher_realizable, DistinguishBudget, DistinguisherOutcome,
    ExampleOracle, LearnParams, Learner, LearnerError, Verdict,
};
pub use ensemble::{
    exact_exceedance, scatter_check_fixed, EnsembleKind, EnsembleSpec, ScatterReport, EXACT_M_LIMIT,
};
pub use experiment::{
    learner_by_name, run_experiment, Arm, ExperimentConfig, ExperimentReport, Pipeline, TrialRecord,
};
pub use learners::{HalfspaceLp, LookupMemorizer, ParityGauss};

use crate::reductions::{
    Automaton, DnfFormula, Domain, Halfspace, Intersection4, LabeledSample, ParityHypothesis,
};
use crate::Rat;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("hypothesis expects dimension {expected}, sample domain is {found:?}")]
    DomainMismatch { expected: usize, found: Domain },
    #[error("hypothesis cannot evaluate on domain {0:?}")]
    UnsupportedDomain(Domain),
    #[error("ensemble needs an even example count, got {0}")]
    OddSampleSize(usize),
    #[error("exact enumeration not available: {0}")]
    NoExactPath(String),
    #[error("{0}")]
    Config(String),
}

/// Point code shared by the `{-1,+1}` and `{0,1}` conventions: bit `j` set
/// exactly when coordinate `j` equals `+1`/`1`.
pub(crate) fn point_code(x: &[i8]) -> u64 {
    x.iter()
        .enumerate()
        .fold(0u64, |acc, (j, &v)| acc | (((v == 1) as u64) << j))
}

/// An evaluator from domain vectors to labels. `None` marks an undefined
/// value (a sign classifier on a zero inner product); it matches neither
/// label, so it always counts as an error.
#[derive(Clone, Debug)]
pub enum Hypothesis {
    Const(bool),
    /// `1` iff the coordinate sum is positive; undefined on ties.
    MajorityOfCoords,
    /// Memorized labels by point code, with a default for unseen points.
    Lookup {
        dim: usize,
        map: HashMap<u64, bool>,
        default: bool,
    },
    Parity(ParityHypothesis),
    Halfspace(Halfspace),
    Intersection(Intersection4),
    Dnf(DnfFormula),
    Automaton(Automaton),
}

impl Hypothesis {
    /// The input dimension this hypothesis demands, if it demands one.
    pub fn input_len(&self) -> Option<usize> {
        match self {
            Hypothesis::Const(_) | Hypothesis::MajorityOfCoords => None,
            Hypothesis::Lookup { dim, .. } => Some(*dim),
            Hypothesis::Parity(p) => Some(p.subset.len()),
            Hypothesis::Halfspace(h) => Some(h.weights.len()),
            Hypothesis::Intersection(i) => i.halfspaces.first().map(|h| h.weights.len()),
            Hypothesis::Dnf(f) => Some(f.dim),
            Hypothesis::Automaton(a) => Some(a.input_len),
        }
    }

    pub fn eval(&self, x: &[i8]) -> Option<bool> {
        match self {
            Hypothesis::Const(b) => Some(*b),
            Hypothesis::MajorityOfCoords => {
                let s: i64 = x.iter().map(|&v| v as i64).sum();
                match s.cmp(&0) {
                    std::cmp::Ordering::Greater => Some(true),
                    std::cmp::Ordering::Less => Some(false),
                    std::cmp::Ordering::Equal => None,
                }
            }
            Hypothesis::Lookup { map, default, .. } => {
                Some(map.get(&point_code(x)).copied().unwrap_or(*default))
            }
            Hypothesis::Parity(p) => Some(p.eval(x)),
            Hypothesis::Halfspace(h) => h.eval(x),
            Hypothesis::Intersection(i) => i.eval(x),
            Hypothesis::Dnf(f) => Some(f.eval(x)),
            Hypothesis::Automaton(a) => Some(a.eval(x)),
        }
    }
}

/// Exact fraction of examples the hypothesis gets wrong (undefined values
/// count as wrong). Errors when the dimensions disagree.
pub fn empirical_error(h: &Hypothesis, s: &LabeledSample) -> Result<Rat, LabError> {
    if let Some(d) = h.input_len() {
        if d != s.domain().dim() {
            return Err(LabError::DomainMismatch {
                expected: d,
                found: s.domain(),
            });
        }
    }
    if s.is_empty() {
        return Ok(Rat::from(num_bigint::BigInt::from(0)));
    }
    let wrong = s.iter().filter(|(x, y)| h.eval(x) != Some(*y)).count();
    Ok(crate::rat(wrong as i64, s.len() as i64))
}
