//! 3-SAT instances as threshold-predicate instances.
//!
//! Each source clause gets a fresh block of `k + l - 1` variables: `k`
//! guard variables and `l - 1` padding variables. One bridging constraint
//! carries the three source literals, the positive padding variables and
//! the negated tail of the guard block; guard constraints over every sign
//! pattern with at most `k - l` minus-ones pin the guard block to all-true.
//! Setting every fresh variable true preserves satisfiability, while a
//! source instance of value at most 8/9 loses at least a `2^{-k}/9`
//! fraction in the image.

use super::ReductionError;
use crate::instance::{Assignment, Constraint, Instance};
use crate::pred::{Family, Predicate};
use crate::sign::{index_ones, index_point, sign_of_bit};
use crate::Rat;
use num_traits::One;

/// A transformed instance together with its block layout.
#[derive(Clone, Debug)]
pub struct TklReduction {
    pub instance: Instance,
    pub source_n: usize,
    pub source_m: usize,
    pub k: usize,
    pub l: usize,
}

impl TklReduction {
    /// Fresh variables per source clause.
    pub fn block_width(&self) -> usize {
        self.k + self.l - 1
    }

    /// Constraints per source clause: the bridge plus one guard per sign
    /// pattern with at most `k - l` minus-ones.
    pub fn constraints_per_clause(&self) -> usize {
        self.instance.m() / self.source_m.max(1)
    }

    /// Exact value by block decomposition: fresh blocks are disjoint across
    /// source clauses, so for a fixed source assignment each block
    /// maximizes independently. Exhaustive over `2^{source_n}` source
    /// assignments times `2^{block_width}` block patterns.
    pub fn exact_value_by_blocks(&self) -> (Rat, Assignment) {
        let m = self.instance.m();
        if m == 0 {
            return (Rat::one(), Assignment::from_index(0, self.instance.n()));
        }
        let per = self.constraints_per_clause();
        let bw = self.block_width();
        let mut best_sat = 0usize;
        let mut best_assignment = None;
        let mut full = Assignment::from_index(0, self.instance.n());
        for src_idx in 0..(1usize << self.source_n) {
            for (j, v) in full.0[..self.source_n].iter_mut().enumerate() {
                *v = sign_of_bit((src_idx >> j) & 1);
            }
            let mut total = 0usize;
            for b in 0..self.source_m {
                let base = self.source_n + b * bw;
                let mut block_best = 0usize;
                for pat in 0..(1usize << bw) {
                    for (j, v) in full.0[base..base + bw].iter_mut().enumerate() {
                        *v = sign_of_bit((pat >> j) & 1);
                    }
                    let sat = self.instance.constraints()[b * per..(b + 1) * per]
                        .iter()
                        .filter(|c| self.instance.predicate().eval_index(c.literal_index(&full)))
                        .count();
                    block_best = block_best.max(sat);
                }
                // leave the block at its maximizing pattern for the witness
                let mut arg = 0usize;
                for pat in 0..(1usize << bw) {
                    for (j, v) in full.0[base..base + bw].iter_mut().enumerate() {
                        *v = sign_of_bit((pat >> j) & 1);
                    }
                    let sat = self.instance.constraints()[b * per..(b + 1) * per]
                        .iter()
                        .filter(|c| self.instance.predicate().eval_index(c.literal_index(&full)))
                        .count();
                    if sat == block_best {
                        arg = pat;
                        break;
                    }
                }
                for (j, v) in full.0[base..base + bw].iter_mut().enumerate() {
                    *v = sign_of_bit((arg >> j) & 1);
                }
                total += block_best;
            }
            if best_assignment.is_none() || total > best_sat {
                best_sat = total;
                best_assignment = Some(full.clone());
                if best_sat == m {
                    break;
                }
            }
        }
        (
            crate::rat(best_sat as i64, m as i64),
            best_assignment.unwrap(),
        )
    }
}

/// Transform a `SAT_3` instance into a `T(k,l)` instance (`1 <= l <= k-2`).
/// Fresh block `b` sits at `source_n + b * (k + l - 1)`: guard variables
/// first, padding after. Guard patterns are emitted in ascending point
/// index.
pub fn threesat_to_tkl(j3: &Instance, k: usize, l: usize) -> Result<TklReduction, ReductionError> {
    match j3.predicate().family() {
        Some(Family::Sat { k: 3 }) => {}
        other => {
            return Err(ReductionError::WrongPredicate {
                expected: "sat:3",
                found: other.map(|f| f.to_string()),
            })
        }
    }
    if l == 0 || l + 2 > k {
        return Err(ReductionError::BadThresholdParams { k, l });
    }
    let bw = k + l - 1;
    let n_out = j3.n() + j3.m() * bw;
    let mut constraints = Vec::new();
    for (b, c) in j3.constraints().iter().enumerate() {
        let guard = j3.n() + b * bw; // x^C_1.. at guard..guard+k
        let pad = guard + k; // y^C_4.. at pad..pad+(l-1)
        let mut vars = c.vars.clone();
        let mut signs = c.signs.clone();
        for t in 0..l - 1 {
            vars.push(pad + t);
            signs.push(1);
        }
        for t in l + 2..k {
            vars.push(guard + t);
            signs.push(-1);
        }
        constraints.push(Constraint::new(vars, signs));
        for pat in 0..(1usize << k) {
            if k - index_ones(pat, k) as usize <= k - l {
                constraints.push(Constraint::new(
                    (guard..guard + k).collect(),
                    index_point(pat, k),
                ));
            }
        }
    }
    let instance = Instance::new(Predicate::threshold(k, l), n_out, constraints)?;
    Ok(TklReduction {
        instance,
        source_n: j3.n(),
        source_m: j3.m(),
        k,
        l,
    })
}

/// Extend a source assignment with all-true fresh blocks; satisfies every
/// guard, and every bridge whose source clause the assignment satisfies.
pub fn extend_with_true_blocks(r: &TklReduction, src: &Assignment) -> Assignment {
    assert_eq!(src.len(), r.source_n);
    let mut v = src.values().to_vec();
    v.resize(r.instance.n(), 1);
    Assignment(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn binom(n: usize, r: usize) -> usize {
        if r > n {
            return 0;
        }
        (0..r.min(n - r)).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn constraint_count_per_clause() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let j3 = Instance::random(Predicate::sat(3), 6, 4, &mut rng).unwrap();
        for (k, l) in [(4usize, 2usize), (5, 2), (5, 3), (3, 1)] {
            let r = threesat_to_tkl(&j3, k, l).unwrap();
            let guards: usize = (0..=k - l).map(|s| binom(k, s)).sum();
            assert_eq!(r.instance.m(), 4 * (1 + guards), "k={k} l={l}");
            assert_eq!(r.constraints_per_clause(), 1 + guards);
            assert_eq!(r.instance.n(), 6 + 4 * (k + l - 1));
        }
        assert!(threesat_to_tkl(&j3, 4, 3).is_err());
        assert!(threesat_to_tkl(&j3, 4, 0).is_err());
    }

    #[test]
    fn satisfiable_source_gives_satisfiable_image() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let plant = Assignment::random(5, &mut rng);
        let j3 = Instance::planted(Predicate::sat(3), 5, 3, &plant, &mut rng).unwrap();
        let r = threesat_to_tkl(&j3, 4, 2).unwrap();
        let lifted = extend_with_true_blocks(&r, &plant);
        assert_eq!(r.instance.eval_value(&lifted).unwrap(), rat(1, 1));
        // block decomposition agrees
        let (v, w) = r.exact_value_by_blocks();
        assert_eq!(v, rat(1, 1));
        assert_eq!(r.instance.eval_value(&w).unwrap(), rat(1, 1));
    }

    #[test]
    fn block_value_matches_plain_exhaustion() {
        // small enough for the generic exhaustive path: n_out = 3 + 2*5 = 13
        let j3 = Instance::new(
            Predicate::sat(3),
            3,
            vec![
                Constraint::new(vec![0, 1, 2], vec![1, 1, 1]),
                Constraint::new(vec![0, 1, 2], vec![-1, -1, -1]),
            ],
        )
        .unwrap();
        let r = threesat_to_tkl(&j3, 4, 2).unwrap();
        let (plain, _) = r.instance.exact_value().unwrap();
        let (blocks, w) = r.exact_value_by_blocks();
        assert_eq!(plain, blocks);
        assert_eq!(r.instance.eval_value(&w).unwrap(), blocks);
    }

    #[test]
    fn guards_pin_the_block_to_all_true() {
        // if any guard variable is false some guard constraint fails:
        // value 1 forces all-true guard blocks
        let j3 = Instance::new(
            Predicate::sat(3),
            3,
            vec![Constraint::new(vec![0, 1, 2], vec![1, 1, 1])],
        )
        .unwrap();
        let r = threesat_to_tkl(&j3, 4, 2).unwrap();
        let mut a = extend_with_true_blocks(&r, &Assignment::all_plus(3));
        assert_eq!(r.instance.eval_value(&a).unwrap(), rat(1, 1));
        for g in 0..4 {
            let mut b = a.clone();
            b.0[3 + g] = -1;
            assert!(r.instance.eval_value(&b).unwrap() < rat(1, 1), "guard {g}");
        }
        // padding variables are only in the bridge; flipping one can only
        // break the bridge
        a.0[3 + 4] = -1;
        let v = r.instance.eval_value(&a).unwrap();
        assert!(v >= rat(11, 12));
    }
}
