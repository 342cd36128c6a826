//! Desk-scale workbench for random constraint satisfaction problems and the
//! reductions that turn them into learning samples.
//!
//! The crate has five subsystems:
//!
//! * [`pred`] — boolean predicates as truth tables, their exact parameters
//!   (satisfaction density, zero-forcing variability, the pairwise-uniform
//!   optimum computed by an exact rational LP), and the explicit
//!   pairwise-uniform distributions used by the constructions.
//! * [`instance`] — signed-literal CSP instances, random and planted
//!   generators, exact and local-search valuation.
//! * [`reductions`] — constraint-to-example constructions: the DNF embedding,
//!   the sparse halfspace sample, the parity sample, the four-halfspace
//!   intersection sample, the DNF-to-acyclic-automaton compiler, and the
//!   3-SAT to threshold-predicate instance transformation.
//! * [`lab`] — scattering certification for sample ensembles, the
//!   learner-wrapping distinguisher, and reference learners (GF(2)
//!   elimination, halfspace LP/perceptron, a lookup memorizer).
//! * [`refute`] — clause-level resolution: constraint axiom clauses, trace
//!   checking, a DPLL solver that emits tree resolution refutations, and the
//!   constraint-expansion width criterion.
//!
//! # Conventions
//!
//! Boolean values live in `{-1, +1}` with `+1` meaning *true*. A point of
//! `{-1,+1}^K` is indexed by the integer whose bit `j` is 1 exactly when
//! coordinate `j` is `+1`; truth tables are bit vectors in that index order.
//! Where a construction is stated over `{0,1}`, the involution is `+1 <-> 1`,
//! `-1 <-> 0` (see [`sign`]).
//!
//! All randomized operations take an explicit seeded generator; every
//! function here is a pure map from its inputs (including the generator
//! state), so results are reproducible byte-for-byte from a seed.

pub mod instance;
pub mod lab;
pub mod pred;
pub mod reductions;
pub mod refute;
pub mod sign;
pub mod simplex;

pub use num_rational::BigRational;

/// Shorthand used throughout for exact rational arithmetic.
pub type Rat = num_rational::BigRational;

/// Build an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(num.into(), den.into())
}
