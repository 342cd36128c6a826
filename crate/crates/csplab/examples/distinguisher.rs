//! Wrapping learners into distinguishers: the GF(2) learner separates
//! planted from random parity samples; the memorizer illustrates why the
//! counting argument needs the learner's output-space bound.

use csplab::instance::{Assignment, Instance};
use csplab::lab::{
    distinguisher_agnostic, distinguisher_realizable, DistinguishBudget, HalfspaceLp,
    LookupMemorizer, ParityGauss,
};
use csplab::pred::Predicate;
use csplab::rat;
use csplab::reductions::{halfspace_sample, parity_sample};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let n = 24;
    let beta = rat(1, 10);
    let budget = DistinguishBudget::default();

    let plant = Assignment::random(n, &mut rng);
    let planted = Instance::planted(Predicate::parity(3), n, 4 * n, &plant, &mut rng).unwrap();
    let random = Instance::random(Predicate::parity(3), n, 4 * n, &mut rng).unwrap();

    let s_planted = parity_sample(&planted).unwrap();
    let s_random = parity_sample(&random).unwrap();
    let o1 = distinguisher_realizable(&ParityGauss, &s_planted, &beta, n, 1, budget);
    let o2 = distinguisher_realizable(&ParityGauss, &s_random, &beta, n, 1, budget);
    println!(
        "parity_gauss on planted: {} (err {})",
        o1.verdict,
        o1.error.unwrap()
    );
    println!(
        "parity_gauss on random:  {} (err {})",
        o2.verdict,
        o2.error.unwrap()
    );

    // memorizer on the same random sample: it simply fits what it sees
    let o3 = distinguisher_realizable(
        &LookupMemorizer::default(),
        &s_random,
        &rat(1, 4),
        n,
        1,
        budget,
    );
    println!(
        "memorizer on random:     {} (err {}) - the output-space bound is essential",
        o3.verdict,
        o3.error.unwrap()
    );

    // agnostic threshold on an almost-realizable halfspace sample
    let planted_maj = Instance::planted(
        Predicate::maj(3),
        12,
        40,
        &plant_slice(&plant, 12),
        &mut rng,
    )
    .unwrap();
    let s_maj = halfspace_sample(&planted_maj).unwrap();
    let o4 = distinguisher_agnostic(
        &HalfspaceLp::default(),
        &s_maj,
        &rat(2, 1),
        &rat(1, 20),
        12,
        3,
        budget,
    );
    println!(
        "halfspace_lp (agnostic, alpha=2, beta=1/20) on planted maj: {} (err {})",
        o4.verdict,
        o4.error.unwrap()
    );
}

fn plant_slice(a: &Assignment, n: usize) -> Assignment {
    Assignment(a.values()[..n].to_vec())
}
