//! The pairwise-uniform optimum of a predicate, by exact LP.
//!
//! Maximize the mass a distribution `D` on `{-1,+1}^K` places on `P^{-1}(1)`
//! subject to every pair marginal being uniform: for all `i < j` and
//! `(a,b) in {-1,+1}^2`, the mass of `{x : x_i = a, x_j = b}` is exactly
//! `1/4`. The pair equations imply `sum D = 1` for `K >= 2`; the
//! normalization row is added explicitly so `K = 1` degenerates sensibly.

use super::dist::RationalDistribution;
use super::{PredError, Predicate, UVAL_MAX_ARITY};
use crate::simplex::{solve, LpOutcome, StandardLp};
use crate::{rat, Rat};
use num_traits::{One, Zero};

/// Exact `max_D E_{x~D} P(x)` over pairwise-uniform `D`, with an optimal
/// witness distribution. Arity is capped at [`UVAL_MAX_ARITY`] because the
/// LP has `2^K` variables.
pub fn uval(p: &Predicate) -> Result<(Rat, RationalDistribution), PredError> {
    let k = p.arity();
    if k > UVAL_MAX_ARITY {
        return Err(PredError::UvalArityLimit {
            arity: k,
            max: UVAL_MAX_ARITY,
        });
    }
    let table = p.table().ok_or_else(|| PredError::LazyUnsupported {
        op: "uval",
        family: p.family().map(|f| f.to_string()).unwrap_or_default(),
    })?;
    let n = 1usize << k;

    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    rows.push(vec![Rat::one(); n]);
    rhs.push(Rat::one());
    for i in 0..k {
        for j in i + 1..k {
            // three of the four quadrant equations per pair; the fourth is
            // their complement against the normalization row
            for pat in 0..3usize {
                let (bi, bj) = (pat & 1, pat >> 1);
                let mut row = vec![Rat::zero(); n];
                for (x, v) in row.iter_mut().enumerate() {
                    if (x >> i) & 1 == bi && (x >> j) & 1 == bj {
                        *v = Rat::one();
                    }
                }
                rows.push(row);
                rhs.push(rat(1, 4));
            }
        }
    }
    let objective: Vec<Rat> = (0..n)
        .map(|x| {
            if table.get(x) {
                Rat::one()
            } else {
                Rat::zero()
            }
        })
        .collect();

    let lp = StandardLp {
        num_vars: n,
        rows,
        rhs,
        objective,
    };
    match solve(&lp) {
        LpOutcome::Optimal { value, solution } => {
            let witness = RationalDistribution::new(k, solution)
                .expect("LP constraints force a probability vector");
            Ok((value, witness))
        }
        // the uniform distribution is always feasible and mass is bounded
        other => unreachable!("pairwise-uniform LP cannot be {other:?}"),
    }
}
