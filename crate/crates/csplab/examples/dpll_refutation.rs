//! DPLL with unit propagation: SAT witnesses on planted instances, checked
//! tree-resolution refutations on overconstrained random ones.

use csplab::instance::{contradictory_parity_pair, Assignment, Instance};
use csplab::pred::Predicate;
use csplab::refute::{check_trace, dpll_refute, BranchRule, DpllOutcome};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let pair = contradictory_parity_pair();
    if let DpllOutcome::Unsat { trace, stats } =
        dpll_refute(&pair, BranchRule::FirstUnassigned, 1 << 16)
    {
        check_trace(&pair, &trace).unwrap();
        println!(
            "contradictory parity pair: UNSAT, tree {} nodes, trace:",
            stats.tree_size
        );
        print!("{}", trace.to_text());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(77);
    println!("\nrandom sat:3 at density m = 20n:");
    for n in [20usize, 30, 40] {
        let j = Instance::random(Predicate::sat(3), n, 20 * n, &mut rng).unwrap();
        for rule in [BranchRule::FirstUnassigned, BranchRule::MaxOccurrence] {
            match dpll_refute(&j, rule, 1 << 22) {
                DpllOutcome::Unsat { trace, stats } => {
                    check_trace(&j, &trace).unwrap();
                    println!(
                        "  n={n:<3} {rule:?}: UNSAT tree_size {} (trace {} steps, width {})",
                        stats.tree_size,
                        trace.len(),
                        trace.width()
                    );
                }
                other => println!("  n={n:<3} {rule:?}: unexpected {other:?}"),
            }
        }
    }

    let plant = Assignment::random(30, &mut rng);
    let planted = Instance::planted(Predicate::sat(3), 30, 600, &plant, &mut rng).unwrap();
    match dpll_refute(&planted, BranchRule::MaxOccurrence, 1 << 22) {
        DpllOutcome::Sat { witness, stats } => println!(
            "\nplanted n=30 m=600: SAT in {} nodes, value {}",
            stats.tree_size,
            planted.eval_value(&witness).unwrap()
        ),
        other => println!("\nplanted: {other:?}"),
    }
}
