//! The constraint-to-DNF pipeline: plant, shift every other constraint,
//! embed with alternating labels, and realize the sample with the plant's
//! formula.

use csplab::instance::{Assignment, Instance};
use csplab::lab::{empirical_error, Hypothesis};
use csplab::pred::{is_shift_vector, Predicate};
use csplab::reductions::{dnf_sample, dnf_shift_alternate, pad_embed, phi_u_formula};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // AND_3 admits any non-identity shift vector: shifted satisfying
    // patterns always leave the single satisfying point
    let p = Predicate::and(3);
    let shift = [-1i8, 1, 1];
    assert!(is_shift_vector(&p, &shift).unwrap());

    let n = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let plant = Assignment::random(n, &mut rng);
    let planted = Instance::planted(p.clone(), n, 16, &plant, &mut rng).unwrap();
    let shifted = dnf_shift_alternate(&planted, &shift).unwrap();

    let sat_positions: Vec<usize> = shifted
        .constraints()
        .iter()
        .enumerate()
        .filter(|(_, c)| p.eval_index(c.literal_index(&plant)))
        .map(|(i, _)| i)
        .collect();
    println!("plant satisfies shifted constraints at positions {sat_positions:?}");

    let sample = dnf_sample(&shifted).unwrap();
    println!(
        "sample: {} examples over {:?}, each with {} marked coordinates",
        sample.len(),
        sample.domain(),
        p.arity()
    );

    let phi = phi_u_formula(&plant, &p, n).unwrap();
    println!(
        "realizing formula: {} clause(s), {} literals",
        phi.clause_count(),
        phi.size()
    );
    let err = empirical_error(&Hypothesis::Dnf(phi.clone()), &sample).unwrap();
    println!("empirical error of the plant's formula: {err}");

    // padding with constant-one coordinates keeps the formula realizing
    let padded = pad_embed(&sample, sample.domain().dim() + 10).unwrap();
    let mut clauses = phi.clauses.clone();
    let phi_padded =
        csplab::reductions::DnfFormula::new(padded.domain().dim(), std::mem::take(&mut clauses))
            .unwrap();
    let err_padded = empirical_error(&Hypothesis::Dnf(phi_padded), &padded).unwrap();
    println!(
        "after padding to dimension {}: error {err_padded}",
        padded.domain().dim()
    );
}
