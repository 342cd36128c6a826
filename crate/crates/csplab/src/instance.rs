//! CSP instances: ordered lists of signed predicate applications.
//!
//! A constraint applies the instance predicate to `K` distinct variables
//! with signs: `C(x) = P(j_1 x_{i_1}, ..., j_K x_{i_K})`. Instances carry
//! the predicate once; constraints store only `(vars, signs)`. Constraint
//! lists are ordered and may repeat, so an i.i.d. generator is exactly the
//! uniform instance distribution.

use crate::pred::{PredError, Predicate};
use crate::sign::{self, sign_of_bit};
use crate::Rat;
use num_traits::One;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exhaustive valuation cutoff.
pub const MAX_EXHAUSTIVE_N: usize = 24;
/// Per-constraint rejection budget of the planted sampler.
pub const PLANT_ATTEMPT_BUDGET: u64 = 200_000;

#[derive(Debug, Error)]
pub enum InstanceError {
    #[error("constraint {idx}: {msg}")]
    BadConstraint { idx: usize, msg: String },
    #[error("instance predicate is identically 0")]
    UnsatisfiablePredicate,
    #[error("need n >= K: n={n}, arity={k}")]
    TooFewVariables { n: usize, k: usize },
    #[error("assignment has length {got}, instance has {expected} variables")]
    AssignmentLength { expected: usize, got: usize },
    #[error("exhaustive valuation capped at n={max}, instance has n={n}")]
    TooLargeForExhaustion { n: usize, max: usize },
    #[error("planted sampler stalled on constraint {constraint} after {attempts} attempts")]
    PlantingStalled { constraint: usize, attempts: u64 },
    #[error("predicate of the instance does not imply the replacement")]
    ImplicationFails,
    #[error("not a SAT-family instance (family is {family:?})")]
    NotSatFamily { family: Option<String> },
    #[error("format error: {0}")]
    Format(String),
    #[error(transparent)]
    Pred(#[from] PredError),
}

/// Full assignment to the instance variables, values in `{-1,+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment(pub Vec<i8>);

impl Assignment {
    pub fn all_plus(n: usize) -> Assignment {
        Assignment(vec![1; n])
    }

    /// Assignment from a point index: bit `j` set means `x_j = +1`.
    pub fn from_index(idx: usize, n: usize) -> Assignment {
        Assignment(sign::index_point(idx, n))
    }

    pub fn random(n: usize, rng: &mut impl Rng) -> Assignment {
        Assignment(
            (0..n)
                .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[i8] {
        &self.0
    }
}

/// Signed application of the instance predicate to distinct variables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constraint {
    pub vars: Vec<usize>,
    pub signs: Vec<i8>,
}

impl Constraint {
    pub fn new(vars: Vec<usize>, signs: Vec<i8>) -> Constraint {
        Constraint { vars, signs }
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    fn validate(&self, n: usize, arity: usize) -> Result<(), String> {
        if self.vars.len() != arity || self.signs.len() != arity {
            return Err(format!(
                "expected {arity} vars/signs, got {}/{}",
                self.vars.len(),
                self.signs.len()
            ));
        }
        if let Some(&v) = self.vars.iter().find(|&&v| v >= n) {
            return Err(format!("variable {v} out of range for n={n}"));
        }
        let mut seen = self.vars.clone();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return Err("variables are not pairwise distinct".into());
        }
        if let Some(&s) = self.signs.iter().find(|&&s| !sign::is_sign(s)) {
            return Err(format!("sign {s} is not +1/-1"));
        }
        Ok(())
    }

    /// The literal pattern `(j_1 x_{i_1}, ..., j_K x_{i_K})` as a point index.
    #[inline]
    pub fn literal_index(&self, a: &Assignment) -> usize {
        let mut idx = 0usize;
        for (l, (&v, &s)) in self.vars.iter().zip(&self.signs).enumerate() {
            let bit = sign::bit(a.0[v] * s);
            idx |= bit << l;
        }
        idx
    }

    /// Evaluate under `p`; checks dimensions.
    pub fn eval(&self, p: &Predicate, a: &Assignment) -> Result<bool, InstanceError> {
        if self.vars.len() != p.arity() {
            return Err(InstanceError::BadConstraint {
                idx: 0,
                msg: format!("arity {} vs predicate {}", self.vars.len(), p.arity()),
            });
        }
        if let Some(&v) = self.vars.iter().find(|&&v| v >= a.len()) {
            return Err(InstanceError::AssignmentLength {
                expected: v + 1,
                got: a.len(),
            });
        }
        Ok(p.eval_index(self.literal_index(a)))
    }
}

/// A CSP instance: `n` variables, one predicate, an ordered constraint list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    predicate: Predicate,
    n: usize,
    constraints: Vec<Constraint>,
}

impl Instance {
    /// Validates every constraint. Identically-0 predicates are rejected
    /// (nothing can be planted or satisfied); identically-1 predicates are
    /// accepted because small Huang parameters produce them.
    pub fn new(
        predicate: Predicate,
        n: usize,
        constraints: Vec<Constraint>,
    ) -> Result<Instance, InstanceError> {
        if predicate.constant_value() == Some(false) {
            return Err(InstanceError::UnsatisfiablePredicate);
        }
        let arity = predicate.arity();
        for (idx, c) in constraints.iter().enumerate() {
            c.validate(n, arity)
                .map_err(|msg| InstanceError::BadConstraint { idx, msg })?;
        }
        Ok(Instance {
            predicate,
            n,
            constraints,
        })
    }

    pub fn predicate(&self) -> &Predicate {
        &self.predicate
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.constraints.len()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn into_parts(self) -> (Predicate, usize, Vec<Constraint>) {
        (self.predicate, self.n, self.constraints)
    }

    fn check_assignment(&self, a: &Assignment) -> Result<(), InstanceError> {
        if a.len() != self.n {
            return Err(InstanceError::AssignmentLength {
                expected: self.n,
                got: a.len(),
            });
        }
        Ok(())
    }

    pub fn satisfied_count(&self, a: &Assignment) -> Result<usize, InstanceError> {
        self.check_assignment(a)?;
        Ok(self
            .constraints
            .iter()
            .filter(|c| self.predicate.eval_index(c.literal_index(a)))
            .count())
    }

    /// Fraction of satisfied constraints; the empty instance has value 1.
    pub fn eval_value(&self, a: &Assignment) -> Result<Rat, InstanceError> {
        if self.constraints.is_empty() {
            self.check_assignment(a)?;
            return Ok(Rat::one());
        }
        let sat = self.satisfied_count(a)?;
        Ok(crate::rat(sat as i64, self.constraints.len() as i64))
    }

    /// Uniformly random instance: each constraint an independent draw of an
    /// ordered set of `K` distinct variables plus fair signs.
    pub fn random(
        predicate: Predicate,
        n: usize,
        m: usize,
        rng: &mut impl Rng,
    ) -> Result<Instance, InstanceError> {
        let k = predicate.arity();
        if n < k {
            return Err(InstanceError::TooFewVariables { n, k });
        }
        let constraints = (0..m).map(|_| random_constraint(n, k, rng)).collect();
        Instance::new(predicate, n, constraints)
    }

    /// Planted-satisfiable instance: per-constraint rejection until the
    /// plant satisfies the draw, so the output has value 1 under `plant`
    /// and each constraint is uniform over the plant-satisfied ones.
    pub fn planted(
        predicate: Predicate,
        n: usize,
        m: usize,
        plant: &Assignment,
        rng: &mut impl Rng,
    ) -> Result<Instance, InstanceError> {
        let k = predicate.arity();
        if n < k {
            return Err(InstanceError::TooFewVariables { n, k });
        }
        if predicate.constant_value() == Some(false) {
            return Err(InstanceError::UnsatisfiablePredicate);
        }
        if plant.len() != n {
            return Err(InstanceError::AssignmentLength {
                expected: n,
                got: plant.len(),
            });
        }
        let mut constraints = Vec::with_capacity(m);
        for ci in 0..m {
            let mut attempts = 0u64;
            loop {
                attempts += 1;
                if attempts > PLANT_ATTEMPT_BUDGET {
                    return Err(InstanceError::PlantingStalled {
                        constraint: ci,
                        attempts: attempts - 1,
                    });
                }
                let c = random_constraint(n, k, rng);
                if predicate.eval_index(c.literal_index(plant)) {
                    constraints.push(c);
                    break;
                }
            }
        }
        Instance::new(predicate, n, constraints)
    }

    /// Exhaustive maximum over all `2^n` assignments. Ties go to the
    /// smallest assignment index (bit `j` set = `x_j = +1`); stops early
    /// once a satisfying assignment appears.
    pub fn exact_value(&self) -> Result<(Rat, Assignment), InstanceError> {
        if self.n > MAX_EXHAUSTIVE_N {
            return Err(InstanceError::TooLargeForExhaustion {
                n: self.n,
                max: MAX_EXHAUSTIVE_N,
            });
        }
        let m = self.constraints.len();
        if m == 0 {
            return Ok((Rat::one(), Assignment::from_index(0, self.n)));
        }
        let mut best = 0usize;
        let mut best_idx = 0usize;
        let mut a = Assignment::from_index(0, self.n);
        for idx in 0..(1usize << self.n) {
            for (j, v) in a.0.iter_mut().enumerate() {
                *v = sign_of_bit((idx >> j) & 1);
            }
            let sat = self
                .constraints
                .iter()
                .filter(|c| self.predicate.eval_index(c.literal_index(&a)))
                .count();
            if idx == 0 || sat > best {
                best = sat;
                best_idx = idx;
                if best == m {
                    break;
                }
            }
        }
        Ok((
            crate::rat(best as i64, m as i64),
            Assignment::from_index(best_idx, self.n),
        ))
    }

    /// Greedy-flip local search, best over `restarts` random starts. The
    /// all-plus assignment is always evaluated as the baseline, so
    /// `restarts = 0` reports exactly its value. The result is the value of
    /// an explicit assignment, hence a lower bound on the true value.
    pub fn estimate_value(
        &self,
        restarts: usize,
        rng: &mut impl Rng,
    ) -> Result<(Rat, Assignment), InstanceError> {
        let base = Assignment::all_plus(self.n);
        let mut best_sat = self.satisfied_count(&base)?;
        let mut best = base;
        for _ in 0..restarts {
            let mut a = Assignment::random(self.n, rng);
            let sat = self.greedy_improve(&mut a);
            if sat > best_sat {
                best_sat = sat;
                best = a;
            }
        }
        if self.constraints.is_empty() {
            return Ok((Rat::one(), best));
        }
        Ok((
            crate::rat(best_sat as i64, self.constraints.len() as i64),
            best,
        ))
    }

    /// Flip the best-improving variable (smallest index on ties) until no
    /// flip helps; returns the satisfied count at the local optimum.
    fn greedy_improve(&self, a: &mut Assignment) -> usize {
        let mut by_var: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (ci, c) in self.constraints.iter().enumerate() {
            for &v in &c.vars {
                by_var[v].push(ci);
            }
        }
        let mut sat: Vec<bool> = self
            .constraints
            .iter()
            .map(|c| self.predicate.eval_index(c.literal_index(a)))
            .collect();
        let mut total = sat.iter().filter(|&&s| s).count();
        loop {
            let mut best_delta = 0i64;
            let mut best_var = None;
            #[allow(clippy::needless_range_loop)] // v indexes both by_var and the assignment
            for v in 0..self.n {
                let mut delta = 0i64;
                a.0[v] = -a.0[v];
                for &ci in &by_var[v] {
                    let now = self
                        .predicate
                        .eval_index(self.constraints[ci].literal_index(a));
                    delta += now as i64 - sat[ci] as i64;
                }
                a.0[v] = -a.0[v];
                if delta > best_delta {
                    best_delta = delta;
                    best_var = Some(v);
                }
            }
            let Some(v) = best_var else { return total };
            a.0[v] = -a.0[v];
            for &ci in &by_var[v] {
                let now = self
                    .predicate
                    .eval_index(self.constraints[ci].literal_index(a));
                total = total + now as usize - sat[ci] as usize;
                sat[ci] = now;
            }
        }
    }

    /// Swap the predicate for an implied one, keeping every literal pattern.
    /// Satisfiability and the generating distribution are both preserved.
    pub fn apply_implication(&self, replacement: Predicate) -> Result<Instance, InstanceError> {
        if !self.predicate.implies(&replacement)? {
            return Err(InstanceError::ImplicationFails);
        }
        Ok(Instance {
            predicate: replacement,
            n: self.n,
            constraints: self.constraints.clone(),
        })
    }

    /// Compact DIMACS-like text for SAT-family instances:
    /// `p gcsp sat:K n m`, then one constraint per line as signed 1-based
    /// variable indices with a `0` terminator.
    pub fn to_dimacs(&self) -> Result<String, InstanceError> {
        let family = self.predicate.family();
        let Some(crate::pred::Family::Sat { .. }) = family else {
            return Err(InstanceError::NotSatFamily {
                family: family.map(|f| f.to_string()),
            });
        };
        let mut out = format!(
            "p gcsp {} {} {}\n",
            family.unwrap(),
            self.n,
            self.constraints.len()
        );
        for c in &self.constraints {
            let lits: Vec<String> = c
                .vars
                .iter()
                .zip(&c.signs)
                .map(|(&v, &s)| ((s as i64) * (v as i64 + 1)).to_string())
                .collect();
            out.push_str(&lits.join(" "));
            out.push_str(" 0\n");
        }
        Ok(out)
    }

    pub fn from_dimacs(text: &str) -> Result<Instance, InstanceError> {
        let fmt = |msg: &str| InstanceError::Format(msg.to_string());
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('c'));
        let header = lines.next().ok_or_else(|| fmt("missing header"))?;
        let toks: Vec<&str> = header.split_whitespace().collect();
        let [p, gcsp, family, n, m] = toks.as_slice() else {
            return Err(fmt("header must be `p gcsp <family> <n> <m>`"));
        };
        if *p != "p" || *gcsp != "gcsp" {
            return Err(fmt("header must start with `p gcsp`"));
        }
        let predicate = Predicate::parse(family)?;
        if !matches!(predicate.family(), Some(crate::pred::Family::Sat { .. })) {
            return Err(InstanceError::NotSatFamily {
                family: predicate.family().map(|f| f.to_string()),
            });
        }
        let n: usize = n.parse().map_err(|_| fmt("bad n"))?;
        let m: usize = m.parse().map_err(|_| fmt("bad m"))?;
        let mut constraints = Vec::with_capacity(m);
        for line in lines.take(m) {
            let mut vars = Vec::new();
            let mut signs = Vec::new();
            for tok in line.split_whitespace() {
                let lit: i64 = tok.parse().map_err(|_| fmt("bad literal"))?;
                if lit == 0 {
                    break;
                }
                vars.push(lit.unsigned_abs() as usize - 1);
                signs.push(if lit > 0 { 1 } else { -1 });
            }
            constraints.push(Constraint::new(vars, signs));
        }
        if constraints.len() != m {
            return Err(fmt("fewer constraint lines than the header claims"));
        }
        Instance::new(predicate, n, constraints)
    }
}

fn random_constraint(n: usize, k: usize, rng: &mut impl Rng) -> Constraint {
    // partial Fisher-Yates: uniform ordered k-tuple of distinct indices
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.gen_range(i..n);
        idx.swap(i, j);
    }
    idx.truncate(k);
    let signs = (0..k)
        .map(|_| if rng.gen::<bool>() { 1 } else { -1 })
        .collect();
    Constraint::new(idx, signs)
}

/// The two-constraint contradictory parity pair `x0 + x1` even / odd; the
/// smallest unsatisfiable parity instance.
pub fn contradictory_parity_pair() -> Instance {
    let p = Predicate::parity(2);
    Instance::new(
        p,
        2,
        vec![
            Constraint::new(vec![0, 1], vec![1, 1]),
            Constraint::new(vec![0, 1], vec![1, -1]),
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    #[test]
    fn eval_value_examples() {
        let p = Predicate::sat(3);
        let j = Instance::new(
            p.clone(),
            3,
            vec![Constraint::new(vec![0, 1, 2], vec![1, 1, 1])],
        )
        .unwrap();
        assert_eq!(j.eval_value(&Assignment::all_plus(3)).unwrap(), rat(1, 1));

        // all 8 sign patterns: any assignment falsifies exactly one
        let all_signs = (0..8)
            .map(|s| {
                Constraint::new(
                    vec![0, 1, 2],
                    (0..3).map(|b| sign_of_bit((s >> b) & 1)).collect(),
                )
            })
            .collect();
        let j = Instance::new(p, 3, all_signs).unwrap();
        for idx in 0..8 {
            let a = Assignment::from_index(idx, 3);
            assert_eq!(j.eval_value(&a).unwrap(), rat(7, 8));
        }
    }

    #[test]
    fn contradictory_pair_has_value_half() {
        let j = contradictory_parity_pair();
        for idx in 0..4 {
            let a = Assignment::from_index(idx, 2);
            assert_eq!(j.eval_value(&a).unwrap(), rat(1, 2));
        }
        let (v, _) = j.exact_value().unwrap();
        assert_eq!(v, rat(1, 2));
    }

    #[test]
    fn empty_instance_value_one() {
        let j = Instance::new(Predicate::sat(3), 5, vec![]).unwrap();
        assert_eq!(j.eval_value(&Assignment::all_plus(5)).unwrap(), rat(1, 1));
        let (v, w) = j.exact_value().unwrap();
        assert_eq!(v, rat(1, 1));
        assert_eq!(w, Assignment::from_index(0, 5));
        let mut r = rng(0);
        let je = Instance::random(Predicate::sat(3), 5, 0, &mut r).unwrap();
        assert_eq!(je.m(), 0);
    }

    #[test]
    fn constraint_validation() {
        let p = Predicate::sat(3);
        // duplicate variable
        let c = Constraint::new(vec![0, 0, 1], vec![1, 1, 1]);
        assert!(Instance::new(p.clone(), 3, vec![c]).is_err());
        // out of range
        let c = Constraint::new(vec![0, 1, 5], vec![1, 1, 1]);
        assert!(Instance::new(p.clone(), 3, vec![c]).is_err());
        // bad sign
        let c = Constraint::new(vec![0, 1, 2], vec![1, 1, 0]);
        assert!(Instance::new(p.clone(), 3, vec![c]).is_err());
        // n < K
        assert!(matches!(
            Instance::random(p, 2, 1, &mut rng(0)),
            Err(InstanceError::TooFewVariables { .. })
        ));
        // identically-0 predicate
        let bot = Predicate::from_fn(2, |_| false);
        assert!(matches!(
            Instance::new(bot, 3, vec![]),
            Err(InstanceError::UnsatisfiablePredicate)
        ));
    }

    #[test]
    fn random_instance_seed_determinism() {
        let p = Predicate::sat(3);
        let a = Instance::random(p.clone(), 10, 20, &mut rng(7)).unwrap();
        let b = Instance::random(p, 10, 20, &mut rng(7)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_constraint_marginals_chi_square() {
        // (SAT_3, n=3, m=1): 48 equally likely (ordered, signed) constraints
        let mut r = rng(11);
        let mut counts = std::collections::HashMap::new();
        let trials = 48_000usize;
        for _ in 0..trials {
            let c = random_constraint(3, 3, &mut r);
            *counts.entry((c.vars, c.signs)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 48);
        let expected = trials as f64 / 48.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 47 dof: mean 47, sd sqrt(94) ~ 9.7; 4 sigma above is ~86
        assert!(chi2 < 86.0, "chi2 = {chi2}");
    }

    #[test]
    fn planted_instances_have_value_one() {
        let mut r = rng(3);
        for p in [Predicate::sat(3), Predicate::maj(3), Predicate::parity(3)] {
            let plant = Assignment::random(8, &mut r);
            let j = Instance::planted(p, 8, 30, &plant, &mut r).unwrap();
            assert_eq!(j.eval_value(&plant).unwrap(), rat(1, 1));
        }
    }

    #[test]
    fn planted_rejects_unsatisfiable_predicate() {
        let bot = Predicate::from_fn(2, |_| false);
        let plant = Assignment::all_plus(4);
        assert!(Instance::planted(bot, 4, 1, &plant, &mut rng(0)).is_err());
    }

    #[test]
    fn planted_acceptance_rate_tracks_lval() {
        // acceptance probability of a uniformly random constraint under a
        // fixed plant equals lval; Monte-Carlo within 4 sigma
        let p = Predicate::maj(3);
        let lval = 0.5f64;
        let mut r = rng(21);
        let plant = Assignment::random(9, &mut r);
        let trials = 40_000usize;
        let hits = (0..trials)
            .filter(|_| {
                let c = random_constraint(9, 3, &mut r);
                p.eval_index(c.literal_index(&plant))
            })
            .count();
        let freq = hits as f64 / trials as f64;
        let sigma = (lval * (1.0 - lval) / trials as f64).sqrt();
        assert!((freq - lval).abs() < 4.0 * sigma, "freq = {freq}");
    }

    #[test]
    fn exact_value_on_planted_is_one() {
        let mut r = rng(9);
        let plant = Assignment::random(10, &mut r);
        let j = Instance::planted(Predicate::sat(3), 10, 40, &plant, &mut r).unwrap();
        let (v, w) = j.exact_value().unwrap();
        assert_eq!(v, rat(1, 1));
        assert_eq!(j.eval_value(&w).unwrap(), rat(1, 1));
    }

    #[test]
    fn exact_value_dominates_lval() {
        // a random assignment satisfies an lval fraction in expectation, so
        // the maximum cannot be below it
        let mut r = rng(31);
        for p in [Predicate::sat(3), Predicate::maj(3), Predicate::parity(4)] {
            let lval = p.lval().unwrap();
            for _ in 0..5 {
                let j = Instance::random(p.clone(), 9, 50, &mut r).unwrap();
                let (v, _) = j.exact_value().unwrap();
                assert!(v >= lval, "{:?}: {v} < {lval}", p.family());
            }
        }
    }

    #[test]
    fn exact_value_cap() {
        let j = Instance::new(Predicate::sat(3), 30, vec![]).unwrap();
        assert!(matches!(
            j.exact_value(),
            Err(InstanceError::TooLargeForExhaustion { .. })
        ));
    }

    #[test]
    fn estimate_value_is_lower_bound() {
        let mut r = rng(13);
        let j = Instance::random(Predicate::sat(3), 12, 80, &mut r).unwrap();
        let (exact, _) = j.exact_value().unwrap();
        let (est, w) = j.estimate_value(5, &mut r).unwrap();
        assert!(est <= exact);
        assert_eq!(j.eval_value(&w).unwrap(), est);
        // restarts = 0 reports the all-plus value
        let (est0, _) = j.estimate_value(0, &mut r).unwrap();
        assert_eq!(est0, j.eval_value(&Assignment::all_plus(12)).unwrap());
    }

    #[test]
    fn apply_implication_preserves_satisfaction() {
        let mut r = rng(17);
        let plant = Assignment::random(8, &mut r);
        let j = Instance::planted(Predicate::and(3), 8, 12, &plant, &mut r).unwrap();
        let j2 = j.apply_implication(Predicate::sat(3)).unwrap();
        assert_eq!(j2.eval_value(&plant).unwrap(), rat(1, 1));
        assert_eq!(j2.constraints(), j.constraints());
        // identity replacement gives an identical instance
        let j3 = j.apply_implication(Predicate::and(3)).unwrap();
        assert_eq!(j3, j);
        // non-implication is refused
        assert!(matches!(
            j2.apply_implication(Predicate::and(3)),
            Err(InstanceError::ImplicationFails)
        ));
    }

    #[test]
    fn implication_never_decreases_value() {
        let mut r = rng(23);
        for _ in 0..10 {
            let j = Instance::random(Predicate::and(3), 7, 15, &mut r).unwrap();
            let j2 = j.apply_implication(Predicate::maj(3)).unwrap();
            let (v1, _) = j.exact_value().unwrap();
            let (v2, _) = j2.exact_value().unwrap();
            assert!(v2 >= v1);
        }
    }

    #[test]
    fn json_round_trip() {
        let mut r = rng(2);
        let j = Instance::random(Predicate::maj(3), 9, 14, &mut r).unwrap();
        let js = serde_json::to_string(&j).unwrap();
        let back: Instance = serde_json::from_str(&js).unwrap();
        assert_eq!(j, back);
    }

    #[test]
    fn dimacs_round_trip() {
        let mut r = rng(4);
        let j = Instance::random(Predicate::sat(3), 6, 9, &mut r).unwrap();
        let text = j.to_dimacs().unwrap();
        assert!(text.starts_with("p gcsp sat:3 6 9\n"));
        let back = Instance::from_dimacs(&text).unwrap();
        assert_eq!(j, back);
        // non-SAT families are refused
        let jm = Instance::random(Predicate::maj(3), 6, 2, &mut r).unwrap();
        assert!(matches!(
            jm.to_dimacs(),
            Err(InstanceError::NotSatFamily { .. })
        ));
    }
}
