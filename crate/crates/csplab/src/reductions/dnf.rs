//! The constraint-to-DNF construction.
//!
//! Constraints embed into `{-1,+1}^{2Kn}` through Ψ, which marks each
//! literal `(l, j_l, i_l)` by a single `-1` at coordinate `(l, -j_l, i_l)`.
//! An assignment `u` turns the predicate's full-DNF rows into the formula
//! `φ_u` with one clause per satisfying pattern, and `φ_u(Ψ(C)) = C(u)`
//! pointwise. Alternating labels over a sign-shifted instance then produce
//! a sample that a planted assignment realizes through `φ_u`.

use super::{Domain, LabeledSample, ReductionError};
use crate::instance::{Assignment, Constraint, Instance};
use crate::pred::Predicate;
use crate::sign;
use serde::{Deserialize, Serialize};

/// Disjunction of conjunctions over `{-1,+1}^dim`; a literal `(v, s)`
/// requires coordinate `v` to equal `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DnfFormula {
    pub dim: usize,
    pub clauses: Vec<Vec<(usize, i8)>>,
}

impl DnfFormula {
    pub fn new(dim: usize, clauses: Vec<Vec<(usize, i8)>>) -> Result<DnfFormula, ReductionError> {
        for (ci, clause) in clauses.iter().enumerate() {
            let mut vars: Vec<usize> = clause.iter().map(|&(v, _)| v).collect();
            vars.sort_unstable();
            if vars.windows(2).any(|w| w[0] == w[1]) {
                return Err(ReductionError::BadFormula(format!(
                    "clause {ci} repeats a variable"
                )));
            }
            if let Some(&(v, s)) = clause.iter().find(|&&(v, s)| v >= dim || !sign::is_sign(s)) {
                return Err(ReductionError::BadFormula(format!(
                    "clause {ci} literal ({v},{s}) out of range"
                )));
            }
        }
        Ok(DnfFormula { dim, clauses })
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// Total literal count.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(|c| c.len()).sum()
    }

    pub fn eval(&self, x: &[i8]) -> bool {
        debug_assert_eq!(x.len(), self.dim);
        self.clauses
            .iter()
            .any(|clause| clause.iter().all(|&(v, s)| x[v] == s))
    }
}

/// Flattened coordinate of the triple `(l, b, i)` in `[K] x {-1,+1} x [n]`
/// (all 0-based, `b` as a sign).
#[inline]
pub fn psi_index(l: usize, b: i8, i: usize, n: usize) -> usize {
    (l * 2 + sign::bit(b)) * n + i
}

/// Embed a constraint into `{-1,+1}^{2Kn}`: everything `+1` except one `-1`
/// per literal, at coordinate `(l, -j_l, i_l)`.
pub fn psi_embed(c: &Constraint, n: usize) -> Vec<i8> {
    let k = c.arity();
    let mut v = vec![1i8; 2 * k * n];
    for (l, (&var, &s)) in c.vars.iter().zip(&c.signs).enumerate() {
        v[psi_index(l, -s, var, n)] = -1;
    }
    v
}

/// Decode the `-1` pattern of a Ψ-image back into `(vars, signs)`.
pub fn psi_decode(v: &[i8], k: usize, n: usize) -> Result<Constraint, ReductionError> {
    assert_eq!(v.len(), 2 * k * n);
    let mut vars = vec![usize::MAX; k];
    let mut signs = vec![0i8; k];
    for (pos, &x) in v.iter().enumerate() {
        if x == -1 {
            let i = pos % n;
            let b = sign::sign_of_bit((pos / n) % 2);
            let l = pos / (2 * n);
            if vars[l] != usize::MAX {
                return Err(ReductionError::Format(format!("two marks for literal {l}")));
            }
            vars[l] = i;
            signs[l] = -b;
        }
    }
    if vars.contains(&usize::MAX) {
        return Err(ReductionError::Format("missing literal mark".into()));
    }
    Ok(Constraint::new(vars, signs))
}

/// Multiply the signs of every even-position constraint (2nd, 4th, ...)
/// coordinatewise by `y`, leaving odd positions untouched.
pub fn dnf_shift_alternate(j: &Instance, y: &[i8]) -> Result<Instance, ReductionError> {
    let arity = j.predicate().arity();
    if y.len() != arity {
        return Err(ReductionError::ShiftLength {
            expected: arity,
            got: y.len(),
        });
    }
    let constraints = j
        .constraints()
        .iter()
        .enumerate()
        .map(|(pos, c)| {
            let mut c = c.clone();
            if pos % 2 == 1 {
                for (s, &yy) in c.signs.iter_mut().zip(y) {
                    *s *= yy;
                }
            }
            c
        })
        .collect();
    Ok(Instance::new(j.predicate().clone(), j.n(), constraints)?)
}

/// Ψ-embed every constraint and attach alternating labels `1,0,1,0,...`.
/// The constraint count must be even so the labels balance.
pub fn dnf_sample(j: &Instance) -> Result<LabeledSample, ReductionError> {
    if !j.m().is_multiple_of(2) {
        return Err(ReductionError::OddConstraintCount(j.m()));
    }
    let n = j.n();
    let examples = j
        .constraints()
        .iter()
        .enumerate()
        .map(|(pos, c)| (psi_embed(c, n), pos % 2 == 0))
        .collect();
    LabeledSample::new(Domain::Pm(2 * j.predicate().arity() * n), examples)
}

/// The realizing formula for assignment `u`: one clause per satisfying
/// pattern `b` of the predicate, requiring `x_{(r, u_i * b_r, i)} = +1` for
/// every literal slot `r` and variable `i`. Satisfies `φ_u(Ψ(C)) = C(u)`
/// for every constraint `C`.
pub fn phi_u_formula(
    u: &Assignment,
    p: &Predicate,
    n: usize,
) -> Result<DnfFormula, ReductionError> {
    let k = p.arity();
    assert_eq!(u.len(), n);
    let mut clauses = Vec::new();
    for pattern in 0..(1usize << k) {
        if !p.eval_index(pattern) {
            continue;
        }
        let mut clause = Vec::with_capacity(k * n);
        for r in 0..k {
            let b_r = sign::index_coord(pattern, r);
            for (i, &u_i) in u.values().iter().enumerate() {
                clause.push((psi_index(r, u_i * b_r, i, n), 1i8));
            }
        }
        clauses.push(clause);
    }
    DnfFormula::new(2 * k * n, clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pred::{is_shift_vector, Predicate};
    use crate::sign::index_point;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// All `(vars, signs)` constraints of arity `k` over `n` variables.
    fn all_constraints(n: usize, k: usize) -> Vec<Constraint> {
        fn orders(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for (i, &v) in pool.iter().enumerate() {
                let mut rest = pool.to_vec();
                rest.remove(i);
                for mut tail in orders(&rest, k - 1) {
                    tail.insert(0, v);
                    out.push(tail);
                }
            }
            out
        }
        let pool: Vec<usize> = (0..n).collect();
        let mut out = Vec::new();
        for vars in orders(&pool, k) {
            for s in 0..(1usize << k) {
                out.push(Constraint::new(vars.clone(), index_point(s, k)));
            }
        }
        out
    }

    #[test]
    fn psi_marks_and_injectivity() {
        let n = 5;
        let cs = all_constraints(n, 3);
        let mut seen = std::collections::HashSet::new();
        for c in &cs {
            let v = psi_embed(c, n);
            assert_eq!(v.iter().filter(|&&x| x == -1).count(), 3);
            assert_eq!(&psi_decode(&v, 3, n).unwrap(), c);
            assert!(seen.insert(v), "Ψ collided on {c:?}");
        }
    }

    #[test]
    fn phi_u_equals_constraint_evaluation() {
        // toy K=3 predicate over a small grid, fully exhaustive
        let p = Predicate::maj(3);
        let n = 4;
        let cs = all_constraints(n, 3);
        for u_idx in 0..(1usize << n) {
            let u = Assignment::from_index(u_idx, n);
            let phi = phi_u_formula(&u, &p, n).unwrap();
            assert_eq!(phi.clause_count(), 4); // |maj_3^{-1}(1)|
            for c in &cs {
                let lhs = phi.eval(&psi_embed(c, n));
                let rhs = p.eval_index(c.literal_index(&u));
                assert_eq!(lhs, rhs, "u={u_idx} c={c:?}");
            }
        }
    }

    #[test]
    fn phi_u_single_clause_for_and() {
        let p = Predicate::and(4);
        let u = Assignment::all_plus(3);
        let phi = phi_u_formula(&u, &p, 3).unwrap();
        assert_eq!(phi.clause_count(), 1);
        assert_eq!(phi.size(), 4 * 3);
    }

    #[test]
    fn shift_identity_and_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let j = Instance::random(Predicate::sat(3), 6, 10, &mut rng).unwrap();
        // all-ones shift changes nothing
        let same = dnf_shift_alternate(&j, &[1, 1, 1]).unwrap();
        assert_eq!(same, j);
        // shifting twice with the same vector is the identity
        let y = [-1, 1, -1];
        let shifted = dnf_shift_alternate(&j, &y).unwrap();
        assert_ne!(shifted, j);
        assert_eq!(dnf_shift_alternate(&shifted, &y).unwrap(), j);
        assert!(matches!(
            dnf_shift_alternate(&j, &[1, 1]),
            Err(ReductionError::ShiftLength { .. })
        ));
    }

    #[test]
    fn shift_preserves_uniform_law() {
        // sign-flipping fixed coordinates of fair signs keeps them fair:
        // chi-square over the 48 constraints at n=3, even positions only
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut counts = std::collections::HashMap::new();
        let trials = 24_000usize;
        let y = [-1i8, -1, 1];
        for _ in 0..trials {
            let j = Instance::random(Predicate::sat(3), 3, 2, &mut rng).unwrap();
            let shifted = dnf_shift_alternate(&j, &y).unwrap();
            let c = &shifted.constraints()[1];
            *counts
                .entry((c.vars.clone(), c.signs.clone()))
                .or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 48);
        let expected = trials as f64 / 48.0;
        let chi2: f64 = counts
            .values()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        assert!(chi2 < 86.0, "chi2 = {chi2}");
    }

    #[test]
    fn shifted_plant_satisfies_exactly_odd_positions() {
        // AND_3 admits every y != all-ones as a shift vector, so the
        // planted assignment satisfies exactly the odd (1st, 3rd, ...)
        // constraints after shifting.
        let p = Predicate::and(3);
        let y = [-1i8, 1, 1];
        assert!(is_shift_vector(&p, &y).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let plant = Assignment::random(6, &mut rng);
        let j = Instance::planted(p.clone(), 6, 12, &plant, &mut rng).unwrap();
        let shifted = dnf_shift_alternate(&j, &y).unwrap();
        for (pos, c) in shifted.constraints().iter().enumerate() {
            let sat = p.eval_index(c.literal_index(&plant));
            assert_eq!(sat, pos % 2 == 0, "position {pos}");
        }
    }

    #[test]
    fn dnf_sample_labels_and_realizability() {
        let p = Predicate::and(3);
        let y = [-1i8, 1, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let plant = Assignment::random(5, &mut rng);
        let j = Instance::planted(p.clone(), 5, 8, &plant, &mut rng).unwrap();
        let shifted = dnf_shift_alternate(&j, &y).unwrap();
        let s = dnf_sample(&shifted).unwrap();
        assert_eq!(s.domain(), Domain::Pm(2 * 3 * 5));
        let labels: Vec<bool> = s.iter().map(|(_, y)| y).collect();
        assert_eq!(
            labels,
            vec![true, false, true, false, true, false, true, false]
        );
        for (v, _) in s.iter() {
            assert_eq!(v.iter().filter(|&&x| x == -1).count(), 3);
        }
        // φ_u realizes the shifted sample with zero error
        let phi = phi_u_formula(&plant, &p, 5).unwrap();
        for (v, label) in s.iter() {
            assert_eq!(phi.eval(v), label);
        }
        // odd constraint counts are refused
        let j1 = Instance::planted(p, 5, 7, &plant, &mut rng).unwrap();
        assert!(matches!(
            dnf_sample(&j1),
            Err(ReductionError::OddConstraintCount(7))
        ));
    }

    #[test]
    fn padding_keeps_the_formula_realizing() {
        let p = Predicate::and(3);
        let y = [1i8, -1, 1];
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let plant = Assignment::random(4, &mut rng);
        let j = Instance::planted(p.clone(), 4, 6, &plant, &mut rng).unwrap();
        let s = dnf_sample(&dnf_shift_alternate(&j, &y).unwrap()).unwrap();
        let phi = phi_u_formula(&plant, &p, 4).unwrap();
        let padded = crate::reductions::pad_embed(&s, 40).unwrap();
        // same clauses, wider dimension: labels still match verbatim
        let phi_wide = DnfFormula::new(40, phi.clauses.clone()).unwrap();
        for ((v, yl), (w, _)) in s.iter().zip(padded.iter()) {
            assert_eq!(phi.eval(v), yl);
            assert_eq!(phi_wide.eval(w), yl);
        }
    }

    #[test]
    fn formula_validation() {
        assert!(DnfFormula::new(3, vec![vec![(0, 1), (0, -1)]]).is_err());
        assert!(DnfFormula::new(3, vec![vec![(3, 1)]]).is_err());
        assert!(DnfFormula::new(3, vec![vec![(0, 2)]]).is_err());
        // empty clause accepts everything
        let f = DnfFormula::new(2, vec![vec![]]).unwrap();
        assert!(f.eval(&[-1, -1]));
        // empty formula rejects everything
        let f = DnfFormula::new(2, vec![]).unwrap();
        assert!(!f.eval(&[1, 1]));
    }
}
