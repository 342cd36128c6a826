//! Eight-block threshold constraints as intersection-of-four-halfspace
//! examples.
//!
//! A `PK8(k)` constraint spans eight `k`-blocks of literals. Its positive
//! example writes the first four blocks' signs into the four `n`-segments
//! of `{-1,0,1}^{4n}`; its negative example writes blocks five through
//! eight into the same four segments. A satisfying assignment `u` turns
//! into the intersection witness `sum_i u_i x_{nq + i} >= -1` over the four
//! segments: satisfied lower blocks clear `-1` (odd `k`), and the failing
//! upper block drops to `-3` or below, so both labels come out right.

use super::halfspace::{Halfspace, Intersection4};
use super::{Domain, LabeledSample, ReductionError};
use crate::instance::{Assignment, Instance};
use crate::pred::Family;

/// Two `{-1,0,1}^{4n}` examples per constraint, positive first; each has
/// exactly `4k` nonzero coordinates.
pub fn inter4_sample(j: &Instance) -> Result<LabeledSample, ReductionError> {
    let k = match j.predicate().family() {
        Some(Family::Pk8 { k }) => k,
        other => {
            return Err(ReductionError::WrongPredicate {
                expected: "pk8",
                found: other.map(|f| f.to_string()),
            })
        }
    };
    let n = j.n();
    let mut examples = Vec::with_capacity(2 * j.m());
    for c in j.constraints() {
        let mut pos = vec![0i8; 4 * n];
        let mut neg = vec![0i8; 4 * n];
        for q in 0..4 {
            for l in 0..k {
                pos[n * q + c.vars[q * k + l]] = c.signs[q * k + l];
                neg[n * q + c.vars[(q + 4) * k + l]] = c.signs[(q + 4) * k + l];
            }
        }
        examples.push((pos, true));
        examples.push((neg, false));
    }
    LabeledSample::new(Domain::Tri(4 * n), examples)
}

/// The four-halfspace witness of an assignment: block `q` tests
/// `sum_i u_i x_{nq + i} >= -1`.
pub fn inter4_witness(u: &Assignment) -> Intersection4 {
    let n = u.len();
    let halfspaces = (0..4)
        .map(|q| {
            let mut w = vec![0i64; 4 * n];
            for (i, &ui) in u.values().iter().enumerate() {
                w[n * q + i] = ui as i64;
            }
            Halfspace::new(w, Some(-1)).expect("plant has nonzero entries")
        })
        .collect();
    Intersection4 { halfspaces }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pred::Predicate;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn planted_pipeline_realized_by_witness() {
        let p = Predicate::named(Family::Pk8 { k: 3 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let plant = Assignment::random(30, &mut rng);
        let j = Instance::planted(p, 30, 8, &plant, &mut rng).unwrap();
        let s = inter4_sample(&j).unwrap();
        assert_eq!(s.len(), 16);
        for (v, _) in s.iter() {
            assert_eq!(v.iter().filter(|&&x| x != 0).count(), 4 * 3);
        }
        let w = inter4_witness(&plant);
        for (v, y) in s.iter() {
            assert_eq!(w.eval(v), Some(y), "witness must realize the sample");
        }
    }

    #[test]
    fn block_patterns_are_disjoint_views_of_one_constraint() {
        let p = Predicate::named(Family::Pk8 { k: 3 }).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let j = Instance::random(p, 25, 5, &mut rng).unwrap();
        let s = inter4_sample(&j).unwrap();
        for (ci, c) in j.constraints().iter().enumerate() {
            let (pos, neg) = (&s.examples()[2 * ci].0, &s.examples()[2 * ci + 1].0);
            // positive uses literal slots 0..4k, negative 4k..8k
            for q in 0..4usize {
                for l in 0..3usize {
                    assert_eq!(pos[25 * q + c.vars[q * 3 + l]], c.signs[q * 3 + l]);
                    assert_eq!(
                        neg[25 * q + c.vars[(q + 4) * 3 + l]],
                        c.signs[(q + 4) * 3 + l]
                    );
                }
            }
        }
    }

    #[test]
    fn wrong_predicate_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let j = Instance::random(Predicate::maj(3), 10, 3, &mut rng).unwrap();
        assert!(matches!(
            inter4_sample(&j),
            Err(ReductionError::WrongPredicate { .. })
        ));
    }

    #[test]
    fn lazy_pk8_also_reduces() {
        // k = 5 is served by the lazy evaluator; the reduction only needs
        // pointwise evaluation for planting
        let p = Predicate::named(Family::Pk8 { k: 5 }).unwrap();
        assert!(p.is_lazy());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let plant = Assignment::random(60, &mut rng);
        let j = Instance::planted(p, 60, 4, &plant, &mut rng).unwrap();
        let s = inter4_sample(&j).unwrap();
        let w = inter4_witness(&plant);
        for (v, y) in s.iter() {
            assert_eq!(w.eval(v), Some(y));
        }
    }
}
