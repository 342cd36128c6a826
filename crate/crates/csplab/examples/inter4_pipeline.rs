//! Eight-block threshold constraints as intersection-of-four-halfspace
//! samples, with the plant's explicit witness.

use csplab::instance::{Assignment, Instance};
use csplab::lab::{empirical_error, Hypothesis};
use csplab::pred::{Family, Predicate};
use csplab::reductions::{inter4_sample, inter4_witness};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let k = 3;
    let p = Predicate::named(Family::Pk8 { k }).unwrap();
    println!("pk8:{k} has arity {} (8 blocks of {k})", p.arity());

    let n = 40;
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let plant = Assignment::random(n, &mut rng);
    let planted = Instance::planted(p, n, 10, &plant, &mut rng).unwrap();
    let sample = inter4_sample(&planted).unwrap();
    println!(
        "sample: {} examples over {:?}, {} nonzeros each",
        sample.len(),
        sample.domain(),
        4 * k
    );

    let witness = inter4_witness(&plant);
    let err = empirical_error(&Hypothesis::Intersection(witness), &sample).unwrap();
    println!("intersection witness Sum u_i x_(nq+i) >= -1, q=0..3: error {err}");

    // the lazy evaluator serves larger blocks with identical semantics
    let lazy = Predicate::named(Family::Pk8 { k: 5 }).unwrap();
    println!(
        "pk8:5 is lazy: {} (arity {}, too wide to tabulate)",
        lazy.is_lazy(),
        lazy.arity()
    );
}
