//! Exact predicate parameters for the named catalogue: satisfaction
//! density, 0-variability, and the pairwise-uniform optimum with its
//! witness distribution.

use csplab::pred::{maj_witness_distribution, uval, Family, Predicate};

fn main() {
    let catalogue = [
        Family::Sat { k: 3 },
        Family::And { k: 3 },
        Family::Maj { k: 3 },
        Family::Maj { k: 5 },
        Family::Parity { k: 3 },
        Family::Parity { k: 4 },
        Family::Threshold { k: 5, l: 3 },
        Family::Huang { k: 4 },
    ];
    println!(
        "{:<10} {:>5} {:>10} {:>8} {:>6} {:>8}",
        "family", "K", "|P^-1(1)|", "lval", "var0", "uval"
    );
    for family in catalogue {
        let p = Predicate::named(family).unwrap();
        let ones = p.satisfying_count().unwrap();
        let lval = p.lval().unwrap();
        let var0 = p
            .var0()
            .map(|w| w.size.to_string())
            .unwrap_or_else(|_| "-".into());
        let (u, witness) = uval(&p).unwrap();
        assert!(witness.is_pairwise_uniform().is_none());
        println!(
            "{:<10} {:>5} {:>10} {:>8} {:>6} {:>8}",
            family.to_string(),
            p.arity(),
            ones,
            lval.to_string(),
            var0,
            u.to_string()
        );
    }

    // the explicit majority witness achieves the optimum
    let d = maj_witness_distribution(5).unwrap();
    let p = Predicate::maj(5);
    let achieved = csplab::pred::expectation(&p, &d).unwrap();
    println!(
        "\nexplicit maj_5 witness achieves {achieved} (pairwise uniform: {})",
        d.is_pairwise_uniform().is_none()
    );

    // a var0 witness in full
    let w = Predicate::maj(5).var0().unwrap();
    println!(
        "maj_5 zero-forcing restriction: coordinates {:?} set to {:?}",
        w.coords,
        w.signs()
    );
}
