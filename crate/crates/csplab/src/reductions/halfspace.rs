//! Majority constraints as sparse halfspace examples.
//!
//! A `maj_K` constraint becomes the pair `(u(C), 1)`, `(-u(C), 0)` where
//! `u(C)` is the `K`-sparse sign vector carrying `j_l` at coordinate `i_l`.
//! A `{-1,+1}` weight vector classifies both correctly exactly when it
//! satisfies the constraint. The ternary domain then embeds into
//! `{-1,+1}^{2n}` by `ψ(0) = (-1,+1)` with duplicated weights, which
//! doubles every inner product and so preserves the sign.

use super::{Domain, LabeledSample, ReductionError};
use crate::instance::Instance;
use crate::pred::Family;
use serde::{Deserialize, Serialize};

/// Integer-weight halfspace. Without a threshold it is the strict sign
/// classifier and a zero inner product is undefined (neither label — made
/// loud instead of silently resolved). With `threshold: Some(t)` it is the
/// closed predicate `<w,x> >= t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    pub weights: Vec<i64>,
    pub threshold: Option<i64>,
}

impl Halfspace {
    pub fn new(weights: Vec<i64>, threshold: Option<i64>) -> Result<Halfspace, ReductionError> {
        if weights.iter().all(|&w| w == 0) {
            return Err(ReductionError::ZeroHalfspace);
        }
        Ok(Halfspace { weights, threshold })
    }

    pub fn signs(weights: Vec<i64>) -> Result<Halfspace, ReductionError> {
        Halfspace::new(weights, None)
    }

    pub fn dot(&self, x: &[i8]) -> i64 {
        debug_assert_eq!(x.len(), self.weights.len());
        self.weights
            .iter()
            .zip(x)
            .map(|(&w, &v)| w * v as i64)
            .sum()
    }

    pub fn eval(&self, x: &[i8]) -> Option<bool> {
        let d = self.dot(x);
        match self.threshold {
            Some(t) => Some(d >= t),
            None => match d.cmp(&0) {
                std::cmp::Ordering::Greater => Some(true),
                std::cmp::Ordering::Less => Some(false),
                std::cmp::Ordering::Equal => None,
            },
        }
    }
}

/// Intersection of halfspaces (four blocks in the eight-block reduction).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection4 {
    pub halfspaces: Vec<Halfspace>,
}

impl Intersection4 {
    pub fn eval(&self, x: &[i8]) -> Option<bool> {
        let mut all = true;
        for h in &self.halfspaces {
            match h.eval(x) {
                Some(true) => {}
                Some(false) => all = false,
                None => return None,
            }
        }
        Some(all)
    }
}

/// Two examples per constraint: the sparse sign vector positively labeled
/// and its negation negatively labeled, in constraint order.
pub fn halfspace_sample(j: &Instance) -> Result<LabeledSample, ReductionError> {
    match j.predicate().family() {
        Some(Family::Maj { k }) if k % 2 == 1 => {}
        other => {
            return Err(ReductionError::WrongPredicate {
                expected: "maj with odd arity",
                found: other.map(|f| f.to_string()),
            })
        }
    }
    let n = j.n();
    let mut examples = Vec::with_capacity(2 * j.m());
    for c in j.constraints() {
        let mut u = vec![0i8; n];
        for (&v, &s) in c.vars.iter().zip(&c.signs) {
            u[v] = s;
        }
        let neg: Vec<i8> = u.iter().map(|&x| -x).collect();
        examples.push((u, true));
        examples.push((neg, false));
    }
    LabeledSample::new(Domain::Tri(n), examples)
}

/// `ψ: {-1,1,0} -> {-1,+1}^2` with `ψ(-1) = (-1,-1)`, `ψ(1) = (1,1)`,
/// `ψ(0) = (-1,1)`, applied coordinatewise.
pub fn tri_to_pm(s: &LabeledSample) -> Result<LabeledSample, ReductionError> {
    let Domain::Tri(n) = s.domain() else {
        return Err(ReductionError::DomainMismatch {
            expected: Domain::Tri(s.domain().dim()),
            found: s.domain(),
        });
    };
    let examples = s
        .iter()
        .map(|(v, y)| {
            let mut w = Vec::with_capacity(2 * n);
            for &x in v {
                match x {
                    -1 => w.extend_from_slice(&[-1, -1]),
                    1 => w.extend_from_slice(&[1, 1]),
                    _ => w.extend_from_slice(&[-1, 1]),
                }
            }
            (w, y)
        })
        .collect();
    LabeledSample::new(Domain::Pm(2 * n), examples)
}

/// Duplicate each weight for the doubled coordinates of [`tri_to_pm`].
pub fn weights_lift(w: &[i64]) -> Vec<i64> {
    let mut out = Vec::with_capacity(2 * w.len());
    for &wi in w {
        out.push(wi);
        out.push(wi);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Assignment;
    use crate::pred::Predicate;
    use crate::sign::index_point;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn plant_correct_iff_satisfied() {
        // exhaustive n = 6, K = 3: every constraint, every +-1 weight vector
        let p = Predicate::maj(3);
        let n = 6;
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let j = Instance::random(p.clone(), n, 40, &mut rng).unwrap();
        let s = halfspace_sample(&j).unwrap();
        for w_idx in 0..(1usize << n) {
            let w_signs = index_point(w_idx, n);
            let w: Vec<i64> = w_signs.iter().map(|&v| v as i64).collect();
            let h = Halfspace::signs(w).unwrap();
            let a = Assignment(w_signs);
            for (ci, c) in j.constraints().iter().enumerate() {
                let sat = p.eval_index(c.literal_index(&a));
                let (pos, neg) = (&s.examples()[2 * ci], &s.examples()[2 * ci + 1]);
                let both_ok = h.eval(&pos.0) == Some(pos.1) && h.eval(&neg.0) == Some(neg.1);
                assert_eq!(sat, both_ok);
                // odd K and +-1 weights: the dot product is never zero here
                assert!(h.eval(&pos.0).is_some());
            }
        }
    }

    #[test]
    fn sample_shape_and_predicate_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let j = Instance::random(Predicate::maj(3), 7, 5, &mut rng).unwrap();
        let s = halfspace_sample(&j).unwrap();
        assert_eq!(s.len(), 10);
        for (v, _) in s.iter() {
            assert_eq!(v.iter().filter(|&&x| x != 0).count(), 3);
        }
        let j_sat = Instance::random(Predicate::sat(3), 7, 5, &mut rng).unwrap();
        assert!(matches!(
            halfspace_sample(&j_sat),
            Err(ReductionError::WrongPredicate { .. })
        ));
    }

    #[test]
    fn embedding_doubles_inner_products() {
        // <Φ(w), Ψ(x)> = 2 <w, x> for every w in {-1,+1}^n, x in {-1,0,1}^n
        let n = 5;
        for w_idx in 0..(1usize << n) {
            let w: Vec<i64> = index_point(w_idx, n).iter().map(|&v| v as i64).collect();
            let lifted = Halfspace::signs(weights_lift(&w)).unwrap();
            let plain = Halfspace::signs(w.clone()).unwrap();
            for x_code in 0..3usize.pow(n as u32) {
                let mut x = Vec::with_capacity(n);
                let mut c = x_code;
                for _ in 0..n {
                    x.push((c % 3) as i8 - 1);
                    c /= 3;
                }
                let s = LabeledSample::new(Domain::Tri(n), vec![(x.clone(), true)]).unwrap();
                let mapped = tri_to_pm(&s).unwrap();
                let px = &mapped.examples()[0].0;
                assert_eq!(lifted.dot(px), 2 * plain.dot(&x));
                assert_eq!(lifted.eval(px), plain.eval(&x));
            }
        }
    }

    #[test]
    fn all_zero_vector_maps_to_zero_dot() {
        let s = LabeledSample::new(Domain::Tri(3), vec![(vec![0, 0, 0], true)]).unwrap();
        let mapped = tri_to_pm(&s).unwrap();
        assert_eq!(mapped.examples()[0].0, vec![-1, 1, -1, 1, -1, 1]);
        let h = Halfspace::signs(weights_lift(&[1, -1, 1])).unwrap();
        assert_eq!(h.eval(&mapped.examples()[0].0), None);
    }

    #[test]
    fn random_instances_give_uniform_sparse_vectors() {
        // positive instance-vectors of a random instance are uniform over
        // the C(4,3) * 2^3 = 32 sparse sign vectors; chi-square at 4 sigma
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let mut counts = std::collections::HashMap::new();
        let trials = 16_000usize;
        for _ in 0..trials {
            let j = Instance::random(Predicate::maj(3), 4, 1, &mut rng).unwrap();
            let s = halfspace_sample(&j).unwrap();
            *counts.entry(s.examples()[0].0.clone()).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 32);
        let expected = trials as f64 / 32.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        // 31 dof: mean 31, sd sqrt(62) ~ 7.9
        assert!(chi2 < 63.0, "chi2 = {chi2}");
    }

    #[test]
    fn zero_halfspace_rejected() {
        assert!(matches!(
            Halfspace::signs(vec![0, 0]),
            Err(ReductionError::ZeroHalfspace)
        ));
    }

    #[test]
    fn label_preservation_through_embedding() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let plant = Assignment::random(8, &mut rng);
        let j = Instance::planted(Predicate::maj(3), 8, 20, &plant, &mut rng).unwrap();
        let s = halfspace_sample(&j).unwrap();
        let w: Vec<i64> = plant.values().iter().map(|&v| v as i64).collect();
        let h = Halfspace::signs(w.clone()).unwrap();
        for (v, y) in s.iter() {
            assert_eq!(h.eval(v), Some(y));
        }
        let mapped = tri_to_pm(&s).unwrap();
        let lifted = Halfspace::signs(weights_lift(&w)).unwrap();
        for (v, y) in mapped.iter() {
            assert_eq!(lifted.eval(v), Some(y));
        }
    }
}
