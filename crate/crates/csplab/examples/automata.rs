//! Compiling DNF formulas into layered acyclic automata and checking
//! language equivalence by exhaustion.

use csplab::reductions::{dnf_to_automaton, DnfFormula};
use csplab::sign::index_point;

fn main() {
    let f = DnfFormula::new(
        10,
        vec![
            vec![(0, 1), (3, -1), (7, 1)],
            vec![(2, -1), (5, 1)],
            vec![(1, 1), (8, -1), (9, 1)],
        ],
    )
    .unwrap();
    let auto = dnf_to_automaton(&f).unwrap();
    println!(
        "formula: {} clauses over {} variables -> automaton with {} states (n * 2^c + 1 = {})",
        f.clause_count(),
        f.dim,
        auto.num_states(),
        f.dim * (1 << f.clause_count()) + 1
    );
    auto.validate().unwrap();

    let mut agree = 0usize;
    let mut accepted = 0usize;
    for idx in 0..(1usize << f.dim) {
        let x = index_point(idx, f.dim);
        let a = auto.eval(&x);
        if a {
            accepted += 1;
        }
        if a == f.eval(&x) {
            agree += 1;
        }
    }
    println!(
        "exhaustive comparison over 2^{} inputs: {} agreements, {} accepted",
        f.dim, agree, accepted
    );
    assert_eq!(agree, 1 << f.dim);

    let json = serde_json::to_string(&auto).unwrap();
    println!("automaton serializes to {} bytes of JSON", json.len());
}
