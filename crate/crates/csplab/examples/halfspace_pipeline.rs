//! Majority constraints as sparse halfspace examples: a corrupted plant
//! still almost-realizes the derived sample, and the ternary domain
//! embeds into the cube without moving any label.

use csplab::instance::{Assignment, Instance};
use csplab::lab::{empirical_error, Hypothesis};
use csplab::pred::Predicate;
use csplab::reductions::{halfspace_sample, tri_to_pm, weights_lift, Halfspace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() {
    let n = 20;
    let m = 200;
    let beta = 0.05;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let plant = Assignment::random(n, &mut rng);
    let planted = Instance::planted(Predicate::maj(3), n, m, &plant, &mut rng).unwrap();

    // corrupt a beta-fraction of constraints by re-randomizing their signs
    let (p, nn, mut cs) = planted.into_parts();
    let corrupt = (beta * m as f64).ceil() as usize;
    for c in cs.iter_mut().take(corrupt) {
        for s in c.signs.iter_mut() {
            *s = if rng.gen::<bool>() { 1 } else { -1 };
        }
    }
    let corrupted = Instance::new(p, nn, cs).unwrap();
    let value = corrupted.eval_value(&plant).unwrap();
    println!("corrupted instance value under plant: {value} (>= 1 - {beta})");

    let sample = halfspace_sample(&corrupted).unwrap();
    let w: Vec<i64> = plant.values().iter().map(|&v| v as i64).collect();
    let h = Halfspace::signs(w.clone()).unwrap();
    let err = empirical_error(&Hypothesis::Halfspace(h), &sample).unwrap();
    println!("plant halfspace empirical error: {err} (almost-realizable at {beta})");

    // lift to {-1,+1}^{2n}; labels and errors are unchanged
    let lifted_sample = tri_to_pm(&sample).unwrap();
    let lifted = Halfspace::signs(weights_lift(&w)).unwrap();
    let err_lifted = empirical_error(&Hypothesis::Halfspace(lifted), &lifted_sample).unwrap();
    println!("after the cube embedding: error {err_lifted}");
    assert_eq!(err, err_lifted);
}
