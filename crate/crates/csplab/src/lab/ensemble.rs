//! Sample ensembles and scattering certification.
//!
//! An ensemble is `(p, ε)`-scattered when every fixed hypothesis has
//! probability at most `2^-p` of empirical error at most `ε` on a draw.
//! The built-in ensembles carry their proved targets: independent uniform
//! pairs are `(m/8, 1/4)`-scattered by the Hoeffding coin bound, and both
//! alternating-label constructions are `(9m/100, 1/5)`-scattered by the
//! paired Hoeffding bound.

use super::stats::wilson_interval;
use super::{Hypothesis, LabError};
use crate::rat;
use crate::reductions::{Domain, LabeledSample};
use crate::sign::index_point;
use crate::Rat;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Largest example count for the exact-enumeration exceedance path.
pub const EXACT_M_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnsembleKind {
    /// `m` examples, instance and label both uniform and independent.
    UniformPairs { n: usize },
    /// Instances i.i.d. uniform on `{-1,+1}^n`, labels `1,0,1,0,...`.
    AlternatingUniform { n: usize },
    /// Uniform `k`-sparse sign vectors `u`, emitted as `(u,1), (-u,0)`.
    AlternatingSigned { n: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnsembleSpec {
    pub kind: EnsembleKind,
    pub m: usize,
}

impl EnsembleSpec {
    pub fn domain(&self) -> Domain {
        match self.kind {
            EnsembleKind::UniformPairs { n } | EnsembleKind::AlternatingUniform { n } => {
                Domain::Pm(n)
            }
            EnsembleKind::AlternatingSigned { n, .. } => Domain::Tri(n),
        }
    }

    /// The declared `(p, ε)` scattering target.
    pub fn scatter_target(&self) -> (f64, Rat) {
        match self.kind {
            EnsembleKind::UniformPairs { .. } => (self.m as f64 / 8.0, rat(1, 4)),
            EnsembleKind::AlternatingUniform { .. } | EnsembleKind::AlternatingSigned { .. } => {
                (9.0 * self.m as f64 / 100.0, rat(1, 5))
            }
        }
    }

    /// `2^-p` for the declared target.
    pub fn bound(&self) -> f64 {
        let (p, _) = self.scatter_target();
        2f64.powf(-p)
    }

    fn emit(&self, rng: &mut impl Rng, mut push: impl FnMut(&[i8], bool)) {
        match self.kind {
            EnsembleKind::UniformPairs { n } => {
                let mut buf = vec![0i8; n];
                for _ in 0..self.m {
                    for v in buf.iter_mut() {
                        *v = if rng.gen::<bool>() { 1 } else { -1 };
                    }
                    let label = rng.gen::<bool>();
                    push(&buf, label);
                }
            }
            EnsembleKind::AlternatingUniform { n } => {
                let mut buf = vec![0i8; n];
                for i in 0..self.m {
                    for v in buf.iter_mut() {
                        *v = if rng.gen::<bool>() { 1 } else { -1 };
                    }
                    push(&buf, i % 2 == 0);
                }
            }
            EnsembleKind::AlternatingSigned { n, k } => {
                let mut buf = vec![0i8; n];
                let mut idx: Vec<usize> = (0..n).collect();
                for _ in 0..self.m / 2 {
                    buf.iter_mut().for_each(|v| *v = 0);
                    for i in 0..k {
                        let j = rng.gen_range(i..n);
                        idx.swap(i, j);
                    }
                    for &v in &idx[..k] {
                        buf[v] = if rng.gen::<bool>() { 1 } else { -1 };
                    }
                    push(&buf, true);
                    for v in buf.iter_mut() {
                        *v = -*v;
                    }
                    push(&buf, false);
                }
            }
        }
    }

    /// Materialize one draw.
    pub fn sample(&self, rng: &mut impl Rng) -> LabeledSample {
        let mut examples = Vec::with_capacity(self.m);
        self.emit(rng, |x, y| examples.push((x.to_vec(), y)));
        LabeledSample::new(self.domain(), examples).expect("generated inside the domain")
    }
}

/// Monte-Carlo scattering check of a fixed hypothesis against an ensemble's
/// declared target.
#[derive(Clone, Debug)]
pub struct ScatterReport {
    pub trials: u64,
    pub hits: u64,
    pub frequency: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    /// Declared exponent `p`; the bound is `2^-p`.
    pub p_target: f64,
    pub epsilon: Rat,
    pub bound: f64,
    /// Upper confidence limit clears the bound.
    pub strict_pass: bool,
    /// Lower confidence limit exceeds the bound: the data contradicts it.
    pub refuted: bool,
    /// False when the bound sits below Monte-Carlo resolution (the upper
    /// limit of zero hits), where `strict_pass` is unattainable by any
    /// finite-sample estimate and only `refuted` is informative.
    pub bound_within_resolution: bool,
}

/// Estimate `Pr(Err_S(h) <= ε)` over `trials` independent draws, one
/// deterministic generator stream per trial.
pub fn scatter_check_fixed(
    h: &Hypothesis,
    spec: &EnsembleSpec,
    trials: u64,
    seed: u64,
) -> Result<ScatterReport, LabError> {
    if let Some(d) = h.input_len() {
        if d != spec.domain().dim() {
            return Err(LabError::DomainMismatch {
                expected: d,
                found: spec.domain(),
            });
        }
    }
    let (p_target, epsilon) = spec.scatter_target();
    let max_wrong = floor_times(&epsilon, spec.m);
    let hits = (0..trials)
        .into_par_iter()
        .filter(|&t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t);
            let mut wrong = 0usize;
            let mut hit = true;
            spec.emit(&mut rng, |x, y| {
                if h.eval(x) != Some(y) {
                    wrong += 1;
                    if wrong > max_wrong {
                        hit = false;
                    }
                }
            });
            hit
        })
        .count() as u64;
    let (lo, hi) = wilson_interval(hits, trials, 1.96);
    let bound = spec.bound();
    let (_, hi_zero) = wilson_interval(0, trials, 1.96);
    Ok(ScatterReport {
        trials,
        hits,
        frequency: hits as f64 / trials as f64,
        wilson_low: lo,
        wilson_high: hi,
        p_target,
        epsilon,
        bound,
        strict_pass: hi <= bound,
        refuted: lo > bound,
        bound_within_resolution: bound >= hi_zero,
    })
}

fn floor_times(eps: &Rat, m: usize) -> usize {
    (eps * Rat::from(BigInt::from(m)))
        .floor()
        .to_integer()
        .to_usize()
        .expect("threshold fits")
}

/// Exact `Pr(Err_S(h) <= ε)` by enumeration, for `m <=` [`EXACT_M_LIMIT`]
/// and enumerable domains (`n <= 20`).
pub fn exact_exceedance(
    h: &Hypothesis,
    spec: &EnsembleSpec,
    epsilon: &Rat,
) -> Result<Rat, LabError> {
    if spec.m > EXACT_M_LIMIT {
        return Err(LabError::NoExactPath(format!(
            "m = {} exceeds the enumeration limit {EXACT_M_LIMIT}",
            spec.m
        )));
    }
    let max_wrong = floor_times(epsilon, spec.m);
    match spec.kind {
        EnsembleKind::UniformPairs { n } => {
            check_enumerable(n)?;
            // labels are independent fair coins: every hypothesis misses
            // each example with probability exactly 1/2
            let pmf = binomial_pmf(spec.m, &rat(1, 2));
            Ok(pmf[..=max_wrong.min(spec.m)].iter().sum())
        }
        EnsembleKind::AlternatingUniform { n } => {
            check_enumerable(n)?;
            let total = 1usize << n;
            let mut hits_true = 0usize;
            let mut hits_false = 0usize;
            for idx in 0..total {
                match h.eval(&index_point(idx, n)) {
                    Some(true) => hits_true += 1,
                    Some(false) => hits_false += 1,
                    None => {}
                }
            }
            let m1 = spec.m.div_ceil(2);
            let m0 = spec.m / 2;
            let q1 = Rat::one() - rat(hits_true as i64, total as i64);
            let q0 = Rat::one() - rat(hits_false as i64, total as i64);
            let pmf = convolve(&binomial_pmf(m1, &q1), &binomial_pmf(m0, &q0));
            Ok(pmf[..=max_wrong.min(spec.m)].iter().sum())
        }
        EnsembleKind::AlternatingSigned { n, k } => {
            if !spec.m.is_multiple_of(2) {
                return Err(LabError::OddSampleSize(spec.m));
            }
            let support = sparse_support(n, k)?;
            let mut t_counts = [0u64; 3];
            let mut buf = vec![0i8; n];
            for u in &support {
                buf.copy_from_slice(u);
                let miss_pos = h.eval(&buf) != Some(true);
                for v in buf.iter_mut() {
                    *v = -*v;
                }
                let miss_neg = h.eval(&buf) != Some(false);
                t_counts[miss_pos as usize + miss_neg as usize] += 1;
            }
            let total = support.len() as i64;
            let probs: Vec<Rat> = t_counts.iter().map(|&c| rat(c as i64, total)).collect();
            // convolution of m/2 i.i.d. {0,1,2}-valued pair misses
            let mut pmf = vec![Rat::one()];
            for _ in 0..spec.m / 2 {
                let mut next = vec![Rat::zero(); pmf.len() + 2];
                for (i, p) in pmf.iter().enumerate() {
                    if !p.is_zero() {
                        for (t, q) in probs.iter().enumerate() {
                            if !q.is_zero() {
                                next[i + t] += p * q;
                            }
                        }
                    }
                }
                pmf = next;
            }
            Ok(pmf[..=max_wrong.min(spec.m)].iter().sum())
        }
    }
}

fn check_enumerable(n: usize) -> Result<(), LabError> {
    if n > 20 {
        return Err(LabError::NoExactPath(format!(
            "domain 2^{n} too large to enumerate"
        )));
    }
    Ok(())
}

fn sparse_support(n: usize, k: usize) -> Result<Vec<Vec<i8>>, LabError> {
    let mut out = Vec::new();
    let mut coords: Vec<usize> = (0..k).collect();
    loop {
        for s in 0..(1usize << k) {
            let mut v = vec![0i8; n];
            for (i, &c) in coords.iter().enumerate() {
                v[c] = crate::sign::sign_of_bit((s >> i) & 1);
            }
            out.push(v);
        }
        if out.len() > (1 << 22) {
            return Err(LabError::NoExactPath("sparse support too large".into()));
        }
        // next combination, lexicographic
        let mut i = k;
        let mut advanced = false;
        while i > 0 {
            i -= 1;
            if coords[i] < n - (k - i) {
                coords[i] += 1;
                for j in i + 1..k {
                    coords[j] = coords[j - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return Ok(out);
        }
    }
}

fn binomial_pmf(n: usize, q: &Rat) -> Vec<Rat> {
    let mut pmf = vec![Rat::one()];
    for _ in 0..n {
        let mut next = vec![Rat::zero(); pmf.len() + 1];
        for (i, p) in pmf.iter().enumerate() {
            if !p.is_zero() {
                next[i + 1] += p * q;
                next[i] += p * (Rat::one() - q);
            }
        }
        pmf = next;
    }
    pmf
}

fn convolve(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if !x.is_zero() {
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
    }
    out
}
