//! Random and planted instance generation, exact and local-search values,
//! and the two file formats.

use csplab::instance::{Assignment, Instance};
use csplab::pred::Predicate;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let random = Instance::random(Predicate::sat(3), 12, 80, &mut rng).unwrap();
    let (value, _) = random.exact_value().unwrap();
    let (estimate, _) = random.estimate_value(20, &mut rng).unwrap();
    println!("random sat:3, n=12, m=80: exact value {value}, local-search bound {estimate}");

    let plant = Assignment::random(12, &mut rng);
    let planted = Instance::planted(Predicate::maj(3), 12, 60, &plant, &mut rng).unwrap();
    println!(
        "planted maj:3, n=12, m=60: value under plant {}",
        planted.eval_value(&plant).unwrap()
    );

    // swapping in an implied predicate preserves the satisfying assignment
    let weakened = planted.apply_implication(Predicate::sat(3)).unwrap();
    println!(
        "after implication maj:3 -> sat:3: value under plant {}",
        weakened.eval_value(&plant).unwrap()
    );

    // local search sometimes recovers a satisfying assignment outright;
    // measured here, never asserted
    let mut recovered = 0;
    for seed in 0..10u64 {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let plant = Assignment::random(12, &mut r);
        let j = Instance::planted(Predicate::sat(3), 12, 60, &plant, &mut r).unwrap();
        let (est, _) = j.estimate_value(10, &mut r).unwrap();
        recovered += (est == csplab::rat(1, 1)) as u32;
    }
    println!("local search recovered a satisfying assignment on {recovered}/10 planted instances");

    let json = serde_json::to_string(&planted).unwrap();
    let back: Instance = serde_json::from_str(&json).unwrap();
    assert_eq!(back, planted);
    println!("json round-trip ok ({} bytes)", json.len());

    let dimacs = random.to_dimacs().unwrap();
    assert_eq!(Instance::from_dimacs(&dimacs).unwrap(), random);
    println!(
        "dimacs round-trip ok; header: {}",
        dimacs.lines().next().unwrap()
    );
}
