//! The pairwise-uniform four-block sampler: a pairwise-independent 0/1
//! mixture decides which blocks land in the heavy-minus set, keeping every
//! coordinate pair exactly uniform while guaranteeing one heavy block.

use csplab::pred::{dr_heavy_fraction, smallest_dr_k, z_distribution, DrSampler};
use csplab::rat;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let z = z_distribution();
    println!("mixing distribution on {{0,1}}^4:");
    println!("  Pr(Z_i = 1)        = {}", z.marginal_single(0));
    println!("  Pr(Z_i = Z_j = 1)  = {}", z.marginal_pair(0, 1, 1, 1));
    println!("  Pr(Z = 0000)       = {}", z.weight(0));

    for k in [7usize, 9, 10] {
        println!(
            "heavy-minus fraction at k={k}: {} (needs >= 3/8: {})",
            dr_heavy_fraction(k),
            dr_heavy_fraction(k) >= rat(3, 8)
        );
    }
    println!("smallest admissible k: {}", smallest_dr_k());

    let s = DrSampler::new(10).unwrap();
    println!("\nexact marginals of the k=10 sampler:");
    println!("  Pr(x_0 = +1)            = {}", s.marginal_single(0, 1));
    println!(
        "  Pr(x_0 = x_1 = +1)      = {}",
        s.marginal_pair(0, 1, 1, 1)
    );
    println!(
        "  Pr(x_3 = +1, x_25 = -1) = {}",
        s.marginal_pair(3, 1, 25, -1)
    );

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let hits = (0..2000)
        .filter(|_| s.some_block_heavy(&s.sample(&mut rng)))
        .count();
    println!("draws with a heavy block: {hits}/2000 (by construction all)");
}
