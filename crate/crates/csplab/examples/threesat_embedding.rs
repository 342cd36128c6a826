//! 3-SAT into threshold CSP: satisfiability carries over with all fresh
//! variables true, while bounded-value sources lose a 2^-k/9 fraction.

use csplab::instance::{Constraint, Instance};
use csplab::pred::Predicate;
use csplab::reductions::{extend_with_true_blocks, threesat_to_tkl};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let (k, l) = (4, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let plant = csplab::instance::Assignment::random(6, &mut rng);
    let j3 = Instance::planted(Predicate::sat(3), 6, 3, &plant, &mut rng).unwrap();
    let r = threesat_to_tkl(&j3, k, l).unwrap();
    println!(
        "satisfiable 3-SAT (n=6, m=3) -> t:{k},{l} with n={}, m={} ({} constraints per clause)",
        r.instance.n(),
        r.instance.m(),
        r.constraints_per_clause()
    );
    let lifted = extend_with_true_blocks(&r, &plant);
    println!(
        "value with all fresh variables true: {}",
        r.instance.eval_value(&lifted).unwrap()
    );
    let (v, _) = r.exact_value_by_blocks();
    println!("exact value by block decomposition: {v}");

    // the eight contradictory sign patterns have value 7/8 <= 8/9
    let contradictory = Instance::new(
        Predicate::sat(3),
        3,
        (0..8usize)
            .map(|s| Constraint::new(vec![0, 1, 2], csplab::sign::index_point(s, 3)))
            .collect(),
    )
    .unwrap();
    let (v3, _) = contradictory.exact_value().unwrap();
    let r = threesat_to_tkl(&contradictory, k, l).unwrap();
    let (vr, _) = r.exact_value_by_blocks();
    println!("\ncontradictory source value {v3}; image value {vr}");
    println!(
        "guaranteed gap: image value <= 1 - 2^-{k}/9 = {}",
        csplab::rat(143, 144)
    );
}
