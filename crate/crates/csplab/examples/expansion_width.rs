//! The expansion hypothesis behind the width lower bound, on crafted and
//! random instances, with the constant-free length exponent it implies.

use csplab::instance::{Constraint, Instance};
use csplab::pred::Predicate;
use csplab::refute::{bw_length_exponent, expansion_check, ExpansionOutcome};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    // two disjoint constraints expand maximally
    let disjoint = Instance::new(
        Predicate::maj(5),
        10,
        vec![
            Constraint::new(vec![0, 1, 2, 3, 4], vec![1; 5]),
            Constraint::new(vec![5, 6, 7, 8, 9], vec![1; 5]),
        ],
    )
    .unwrap();
    let rep = expansion_check(&disjoint, 2, 1000, 0).unwrap();
    println!("disjoint maj:5 pair at l=2: {:?}", rep.outcome);

    // identical constraints share every variable
    let c = Constraint::new(vec![0, 1, 2, 3, 4], vec![1; 5]);
    let same = Instance::new(Predicate::maj(5), 10, vec![c.clone(), c]).unwrap();
    let rep = expansion_check(&same, 2, 1000, 0).unwrap();
    println!("identical maj:5 pair at l=2: {:?}", rep.outcome);

    // sparse random instances expand; the report carries width >= l/6 and
    // the length exponent scale width^2 / n
    let mut rng = ChaCha8Rng::seed_from_u64(60);
    let j = Instance::random(Predicate::maj(5), 60, 240, &mut rng).unwrap();
    let l = 8;
    let rep = expansion_check(&j, l, 20_000, 1).unwrap();
    match &rep.outcome {
        ExpansionOutcome::Violated { subset } => {
            println!("random maj:5 n=60 m=240 at l={l}: violated by {subset:?}")
        }
        verified => {
            println!(
                "random maj:5 n=60 m=240 at l={l}: {verified:?}, width >= {}, exponent scale {:.3}",
                rep.width_bound,
                bw_length_exponent(&rep.width_bound, j.n())
            );
        }
    }
    println!(
        "(each expanding constraint needs {} private variables)",
        rep.private_needed
    );
}
