//! Boolean predicates over `{-1,+1}^K` and their exact parameters.
//!
//! A [`Predicate`] is (usually) a materialized truth table, indexed by the
//! point convention of [`crate::sign`]. The named families cover everything
//! the constructions in [`crate::reductions`] consume: `SAT_K`, `MAJ_K`,
//! parity, `AND_K`, the threshold predicates `T(k,l)`, the Huang predicate,
//! and the eight-block threshold product `PK8(k)`. Families too large to
//! materialize (`PK8` with `k > 3`, Huang beyond 26 coordinates) fall back
//! to a lazy evaluator with identical pointwise semantics; the parameter
//! computations (`lval`, `var0`, `uval`) reject those.

mod dist;
mod uval;

pub use dist::{
    dr_heavy_fraction, maj_witness_distribution, parity_witness_distribution, smallest_dr_k,
    tkl_witness_distribution, z_distribution, DrSampler, PairViolation, RationalDistribution,
};
pub use uval::uval;

use crate::sign::{self, index_point, point_index};
use crate::Rat;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

/// Largest arity for which a full truth table is materialized.
pub const MAX_TABLE_ARITY: usize = 26;
/// Largest arity accepted by the exact LP behind [`uval`].
pub const UVAL_MAX_ARITY: usize = 12;

#[derive(Debug, Error)]
pub enum PredError {
    #[error("point has length {got}, predicate arity is {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("predicates must have equal arity ({0} vs {1})")]
    ArityPairMismatch(usize, usize),
    #[error("no falsifying restriction: predicate is identically 1")]
    ConstantOne,
    #[error("{op} requires a materialized truth table; {family} is lazy")]
    LazyUnsupported { op: &'static str, family: String },
    #[error("bad parameters for {family}: {msg}")]
    BadParams { family: &'static str, msg: String },
    #[error(
        "arity {arity} exceeds the exact-path limit {max}; \
         use a Monte-Carlo estimate instead"
    )]
    UvalArityLimit { arity: usize, max: usize },
    #[error("distribution is not well formed: {0}")]
    BadDistribution(String),
    #[error("unknown predicate family {0:?}")]
    UnknownFamily(String),
    #[error("cannot parse predicate spec {0:?}")]
    BadSpec(String),
}

/// Named predicate families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// At least one true literal.
    Sat { k: usize },
    /// Strict majority of true coordinates.
    Maj { k: usize },
    /// Odd number of true coordinates (XOR in the 0/1 convention).
    Parity { k: usize },
    /// All coordinates true.
    And { k: usize },
    /// At least `l` true coordinates.
    Threshold { k: usize, l: usize },
    /// Within Hamming distance `k` of a triple-product-consistent codeword;
    /// arity is `k + C(k,3)`.
    Huang { k: usize },
    /// Eight `k`-blocks: the first four all pass `T(k, ceil(k/2)-1)`, the
    /// last four do not all pass it. Arity `8k`.
    Pk8 { k: usize },
}

impl Family {
    /// Parse a compact spec such as `maj:5`, `t:5,3`, `pk8:3`.
    pub fn parse(spec: &str) -> Result<Family, PredError> {
        let bad = || PredError::BadSpec(spec.to_string());
        let (name, rest) = spec.split_once(':').ok_or_else(bad)?;
        let params: Vec<usize> = rest
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad())?;
        match (name, params.as_slice()) {
            ("sat", [k]) => Ok(Family::Sat { k: *k }),
            ("maj", [k]) => Ok(Family::Maj { k: *k }),
            ("parity", [k]) => Ok(Family::Parity { k: *k }),
            ("and", [k]) => Ok(Family::And { k: *k }),
            ("t", [k, l]) => Ok(Family::Threshold { k: *k, l: *l }),
            ("huang", [k]) => Ok(Family::Huang { k: *k }),
            ("pk8", [k]) => Ok(Family::Pk8 { k: *k }),
            _ => Err(bad()),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Family::Sat { .. } => "sat",
            Family::Maj { .. } => "maj",
            Family::Parity { .. } => "parity",
            Family::And { .. } => "and",
            Family::Threshold { .. } => "t",
            Family::Huang { .. } => "huang",
            Family::Pk8 { .. } => "pk8",
        }
    }

    fn params(&self) -> Vec<usize> {
        match *self {
            Family::Sat { k }
            | Family::Maj { k }
            | Family::Parity { k }
            | Family::And { k }
            | Family::Huang { k }
            | Family::Pk8 { k } => vec![k],
            Family::Threshold { k, l } => vec![k, l],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params: Vec<String> = self.params().iter().map(|p| p.to_string()).collect();
        write!(f, "{}:{}", self.name(), params.join(","))
    }
}

/// Bit-packed truth table over `{-1,+1}^arity`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruthTable {
    arity: usize,
    words: Vec<u64>,
}

impl TruthTable {
    pub fn zeros(arity: usize) -> TruthTable {
        assert!(arity <= MAX_TABLE_ARITY);
        let nwords = (1usize << arity).div_ceil(64).max(1);
        TruthTable {
            arity,
            words: vec![0; nwords],
        }
    }

    pub fn from_fn(arity: usize, mut f: impl FnMut(usize) -> bool) -> TruthTable {
        let mut t = TruthTable::zeros(arity);
        for idx in 0..(1usize << arity) {
            if f(idx) {
                t.set(idx, true);
            }
        }
        t
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn num_points(&self) -> usize {
        1usize << self.arity
    }

    #[inline]
    pub fn get(&self, idx: usize) -> bool {
        debug_assert!(idx < self.num_points());
        (self.words[idx >> 6] >> (idx & 63)) & 1 == 1
    }

    pub fn set(&mut self, idx: usize, v: bool) {
        debug_assert!(idx < self.num_points());
        if v {
            self.words[idx >> 6] |= 1u64 << (idx & 63);
        } else {
            self.words[idx >> 6] &= !(1u64 << (idx & 63));
        }
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    /// Set containment of satisfying points: `self^{-1}(1) ⊆ other^{-1}(1)`.
    pub fn contained_in(&self, other: &TruthTable) -> bool {
        debug_assert_eq!(self.arity, other.arity);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(p, q)| p & !q == 0)
    }

    /// Lowercase hex of the bit vector, LSB = input index 0.
    pub fn to_hex(&self) -> String {
        let nbytes = self.num_points().div_ceil(8);
        let mut s = String::with_capacity(nbytes * 2);
        for b in 0..nbytes {
            let byte = (self.words[b / 8] >> ((b % 8) * 8)) as u8;
            s.push_str(&format!("{byte:02x}"));
        }
        s
    }

    pub fn from_hex(arity: usize, hex: &str) -> Result<TruthTable, PredError> {
        let nbytes = (1usize << arity).div_ceil(8);
        let bad = |msg: &str| PredError::BadSpec(format!("table_hex: {msg}"));
        if hex.len() != nbytes * 2 {
            return Err(bad(&format!(
                "expected {} hex digits for arity {arity}, got {}",
                nbytes * 2,
                hex.len()
            )));
        }
        let mut t = TruthTable::zeros(arity);
        for b in 0..nbytes {
            let byte = u8::from_str_radix(&hex[2 * b..2 * b + 2], 16)
                .map_err(|_| bad("invalid hex digit"))?;
            t.words[b / 8] |= (byte as u64) << ((b % 8) * 8);
        }
        // reject set bits beyond 2^arity
        let n = t.num_points();
        if n < 64 && (t.words[0] >> n) != 0 {
            return Err(bad("bits set beyond table length"));
        }
        Ok(t)
    }

    /// Indices of `XOR`-with-bit-`j` neighbours: `out[i] = self[i ^ (1<<j)]`.
    fn flip_coord(&self, j: usize) -> TruthTable {
        const MASKS: [u64; 6] = [
            0x5555_5555_5555_5555,
            0x3333_3333_3333_3333,
            0x0f0f_0f0f_0f0f_0f0f,
            0x00ff_00ff_00ff_00ff,
            0x0000_ffff_0000_ffff,
            0x0000_0000_ffff_ffff,
        ];
        let mut out = TruthTable::zeros(self.arity);
        if self.num_points() <= 64 || j < 6 {
            if self.num_points() <= 64 {
                // single-word table: do it index by index
                for idx in 0..self.num_points() {
                    out.set(idx, self.get(idx ^ (1 << j)));
                }
                return out;
            }
            let d = 1u32 << j;
            let m = MASKS[j];
            for (o, w) in out.words.iter_mut().zip(&self.words) {
                *o = ((w & m) << d) | ((w >> d) & m);
            }
        } else {
            let s = 1usize << (j - 6);
            for w in 0..self.words.len() {
                out.words[w] = self.words[w ^ s];
            }
        }
        out
    }

    fn or_assign(&mut self, other: &TruthTable) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "TruthTable(arity={}, ones={})",
            self.arity,
            self.count_ones()
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    Table(TruthTable),
    LazyHuang { k: usize, codewords: Vec<u128> },
    LazyPk8 { k: usize, l: usize },
}

/// An arity-`K` boolean predicate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Predicate {
    arity: usize,
    family: Option<Family>,
    repr: Repr,
}

impl Predicate {
    pub fn from_table(table: TruthTable) -> Predicate {
        Predicate {
            arity: table.arity(),
            family: None,
            repr: Repr::Table(table),
        }
    }

    pub fn from_fn(arity: usize, f: impl FnMut(usize) -> bool) -> Predicate {
        Predicate::from_table(TruthTable::from_fn(arity, f))
    }

    /// Build a named predicate; see [`Family`] for the catalogue.
    pub fn named(family: Family) -> Result<Predicate, PredError> {
        let bad = |family: &'static str, msg: String| PredError::BadParams { family, msg };
        let table = |k: usize, f: &mut dyn FnMut(usize) -> bool| -> Result<TruthTable, PredError> {
            if k == 0 || k > MAX_TABLE_ARITY {
                return Err(bad(
                    "table",
                    format!("arity {k} out of range 1..={MAX_TABLE_ARITY}"),
                ));
            }
            Ok(TruthTable::from_fn(k, f))
        };
        let repr = match family {
            Family::Sat { k } => Repr::Table(table(k, &mut |idx| idx != 0)?),
            Family::Maj { k } => Repr::Table(table(k, &mut |idx| {
                2 * sign::index_ones(idx, k) as usize > k
            })?),
            Family::Parity { k } => {
                Repr::Table(table(k, &mut |idx| sign::index_ones(idx, k) % 2 == 1)?)
            }
            Family::And { k } => Repr::Table(table(k, &mut |idx| idx == (1usize << k) - 1)?),
            Family::Threshold { k, l } => {
                if l == 0 || l > k {
                    return Err(bad("t", format!("need 1 <= l <= k, got k={k} l={l}")));
                }
                Repr::Table(table(k, &mut |idx| sign::index_ones(idx, k) as usize >= l)?)
            }
            Family::Huang { k } => {
                if k < 3 {
                    return Err(bad("huang", format!("need k >= 3, got {k}")));
                }
                let arity = k + n_choose_3(k);
                if arity <= MAX_TABLE_ARITY {
                    Repr::Table(huang_table(k))
                } else if arity <= 127 {
                    Repr::LazyHuang {
                        k,
                        codewords: huang_codewords(k).iter().map(|&c| c as u128).collect(),
                    }
                } else {
                    return Err(bad(
                        "huang",
                        format!("arity {arity} exceeds lazy limit 127"),
                    ));
                }
            }
            Family::Pk8 { k } => {
                if k < 3 {
                    return Err(bad("pk8", format!("need k >= 3, got {k}")));
                }
                let l = k.div_ceil(2) - 1;
                if 8 * k <= MAX_TABLE_ARITY {
                    Repr::Table(TruthTable::from_fn(8 * k, |idx| pk8_eval_index(idx, k, l)))
                } else {
                    Repr::LazyPk8 { k, l }
                }
            }
        };
        let arity = match family {
            Family::Sat { k }
            | Family::Maj { k }
            | Family::Parity { k }
            | Family::And { k }
            | Family::Threshold { k, .. } => k,
            Family::Huang { k } => k + n_choose_3(k),
            Family::Pk8 { k } => 8 * k,
        };
        Ok(Predicate {
            arity,
            family: Some(family),
            repr,
        })
    }

    pub fn parse(spec: &str) -> Result<Predicate, PredError> {
        Predicate::named(Family::parse(spec)?)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn is_lazy(&self) -> bool {
        !matches!(self.repr, Repr::Table(_))
    }

    pub fn table(&self) -> Option<&TruthTable> {
        match &self.repr {
            Repr::Table(t) => Some(t),
            _ => None,
        }
    }

    fn require_table(&self, op: &'static str) -> Result<&TruthTable, PredError> {
        self.table().ok_or_else(|| PredError::LazyUnsupported {
            op,
            family: self
                .family
                .map(|f| f.to_string())
                .unwrap_or_else(|| "<raw>".into()),
        })
    }

    /// Evaluate at a point of `{-1,+1}^K`.
    pub fn eval(&self, x: &[i8]) -> Result<bool, PredError> {
        if x.len() != self.arity {
            return Err(PredError::ArityMismatch {
                expected: self.arity,
                got: x.len(),
            });
        }
        Ok(self.eval_point(x))
    }

    /// Unchecked evaluation; `x.len()` must equal the arity.
    pub fn eval_point(&self, x: &[i8]) -> bool {
        debug_assert_eq!(x.len(), self.arity);
        match &self.repr {
            Repr::Table(t) => t.get(point_index(x)),
            Repr::LazyHuang { k, codewords } => {
                let mut packed: u128 = 0;
                for (j, &v) in x.iter().enumerate() {
                    packed |= (sign::bit(v) as u128) << j;
                }
                codewords
                    .iter()
                    .any(|&c| (c ^ packed).count_ones() as usize <= *k)
            }
            Repr::LazyPk8 { k, l } => {
                let t_pass =
                    |q: usize| x[q * k..(q + 1) * k].iter().filter(|&&v| v == 1).count() >= *l;
                (0..4).all(t_pass) && !(4..8).all(t_pass)
            }
        }
    }

    /// Evaluation by point index (materialized tables only).
    #[inline]
    pub fn eval_index(&self, idx: usize) -> bool {
        match &self.repr {
            Repr::Table(t) => t.get(idx),
            _ => self.eval_point(&index_point(idx, self.arity)),
        }
    }

    /// `|P^{-1}(1)|` for materialized tables.
    pub fn satisfying_count(&self) -> Result<u64, PredError> {
        Ok(self.require_table("satisfying_count")?.count_ones())
    }

    /// `Some(v)` iff the predicate is the constant `v` (table path only;
    /// lazy predicates are treated as non-constant).
    pub fn constant_value(&self) -> Option<bool> {
        match &self.repr {
            Repr::Table(t) => {
                let ones = t.count_ones();
                if ones == 0 {
                    Some(false)
                } else if ones == t.num_points() as u64 {
                    Some(true)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Satisfaction density under the uniform distribution: `|P^{-1}(1)| / 2^K`.
    pub fn lval(&self) -> Result<Rat, PredError> {
        let t = self.require_table("lval")?;
        Ok(Rat::new(t.count_ones().into(), (1u64 << self.arity).into()))
    }

    /// `true` iff `self(x) = 1` implies `other(x) = 1` for all `x`.
    pub fn implies(&self, other: &Predicate) -> Result<bool, PredError> {
        if self.arity != other.arity {
            return Err(PredError::ArityPairMismatch(self.arity, other.arity));
        }
        let p = self.require_table("implies")?;
        let q = other.require_table("implies")?;
        Ok(p.contained_in(q))
    }

    /// Smallest number of coordinates that can be fixed to force the
    /// predicate to 0, with the first witness in the canonical search order
    /// (subset size ascending, subsets lexicographic, assignments by index).
    pub fn var0(&self) -> Result<Var0Witness, PredError> {
        let t = self.require_table("var0")?;
        let k = self.arity;
        if t.count_ones() == t.num_points() as u64 {
            return Err(PredError::ConstantOne);
        }
        for r in 1..=k {
            let mut coords: Vec<usize> = (0..r).collect();
            loop {
                if let Some(pattern) = forcing_pattern(t, &coords) {
                    return Ok(Var0Witness {
                        size: r,
                        coords,
                        pattern,
                    });
                }
                if !next_combination(&mut coords, k) {
                    break;
                }
            }
        }
        unreachable!("a non-constant-one table is forced to 0 by fixing all coordinates");
    }

    /// Check that fixing `coords` to `pattern` (bit `i` of `pattern` is the
    /// 0/1 value of `coords[i]`) forces the predicate to 0.
    pub fn restriction_forces_zero(
        &self,
        coords: &[usize],
        pattern: usize,
    ) -> Result<bool, PredError> {
        let t = self.require_table("restriction_forces_zero")?;
        Ok(forcing_patterns(t, coords)[pattern])
    }
}

/// Witness returned by [`Predicate::var0`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Var0Witness {
    /// The 0-variability: the minimal number of coordinates fixed.
    pub size: usize,
    /// The fixed coordinates, ascending.
    pub coords: Vec<usize>,
    /// Assignment to `coords`: bit `i` is the 0/1 value of `coords[i]`.
    pub pattern: usize,
}

impl Var0Witness {
    /// The fixed values as signs, aligned with `coords`.
    pub fn signs(&self) -> Vec<i8> {
        (0..self.coords.len())
            .map(|i| sign::sign_of_bit((self.pattern >> i) & 1))
            .collect()
    }
}

/// For every assignment to `coords`, whether it forces the table to 0.
fn forcing_patterns(t: &TruthTable, coords: &[usize]) -> Vec<bool> {
    let r = coords.len();
    let mut has_sat = vec![false; 1 << r];
    for idx in 0..t.num_points() {
        if t.get(idx) {
            let mut pat = 0usize;
            for (i, &c) in coords.iter().enumerate() {
                pat |= ((idx >> c) & 1) << i;
            }
            has_sat[pat] = true;
        }
    }
    has_sat.iter().map(|&s| !s).collect()
}

/// First assignment (in index order) to `coords` that forces the table to 0.
fn forcing_pattern(t: &TruthTable, coords: &[usize]) -> Option<usize> {
    forcing_patterns(t, coords).iter().position(|&f| f)
}

/// Advance `coords` to the next size-`r` subset of `[0,k)` in lexicographic
/// order; returns false after the last one.
fn next_combination(coords: &mut [usize], k: usize) -> bool {
    let r = coords.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if coords[i] < k - (r - i) {
            coords[i] += 1;
            for j in i + 1..r {
                coords[j] = coords[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn n_choose_3(k: usize) -> usize {
    k * (k - 1) * (k - 2) / 6
}

/// Lexicographic triples `(a,b,c)` with `a < b < c` over `[0,k)`.
pub fn triples(k: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::with_capacity(n_choose_3(k));
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                out.push([a, b, c]);
            }
        }
    }
    out
}

/// Point indices of the `2^k` triple-product-consistent codewords in
/// `{-1,+1}^{k + C(k,3)}`: first `k` coordinates free, triple coordinate
/// `A = {a,b,c}` equal to the product of the corresponding signs (XOR of
/// their bits under the 0/1 convention).
pub fn huang_codewords(k: usize) -> Vec<usize> {
    let trips = triples(k);
    (0..(1usize << k))
        .map(|z| {
            let mut idx = z;
            for (t, [a, b, c]) in trips.iter().enumerate() {
                let bit = ((z >> a) ^ (z >> b) ^ (z >> c)) & 1;
                idx |= bit << (k + t);
            }
            idx
        })
        .collect()
}

/// Truth table of the Huang predicate: the radius-`k` Hamming ball around
/// the codeword set, computed by breadth-first expansion over the cube.
fn huang_table(k: usize) -> TruthTable {
    let arity = k + n_choose_3(k);
    let mut visited = TruthTable::zeros(arity);
    for idx in huang_codewords(k) {
        visited.set(idx, true);
    }
    let mut frontier = visited.clone();
    for _ in 0..k {
        let mut next = TruthTable::zeros(arity);
        for j in 0..arity {
            next.or_assign(&frontier.flip_coord(j));
        }
        // keep only newly reached points
        for (n, v) in next.words.iter_mut().zip(&visited.words) {
            *n &= !v;
        }
        visited.or_assign(&next);
        frontier = next;
    }
    visited
}

fn pk8_eval_index(idx: usize, k: usize, l: usize) -> bool {
    let mask = (1usize << k) - 1;
    let t_pass = |q: usize| ((idx >> (q * k)) & mask).count_ones() as usize >= l;
    (0..4).all(t_pass) && !(4..8).all(t_pass)
}

/// Reference Huang evaluation straight from the definition: search all `y`
/// within Hamming distance `k` of `x` for triple-product consistency.
/// Exponential in the arity; used to cross-check the codeword-scan path.
pub fn huang_eval_by_definition(k: usize, x: &[i8]) -> bool {
    let arity = k + n_choose_3(k);
    assert_eq!(x.len(), arity);
    let trips = triples(k);
    let xi = point_index(x);
    (0..(1usize << arity)).any(|y| {
        (y ^ xi).count_ones() as usize <= k
            && trips
                .iter()
                .enumerate()
                .all(|(t, [a, b, c])| ((y >> a) ^ (y >> b) ^ (y >> c)) & 1 == (y >> (k + t)) & 1)
    })
}

/// Coordinatewise product of two sign vectors, as point indices
/// (`bit = XNOR` of the argument bits).
#[inline]
pub fn index_product(a: usize, b: usize, k: usize) -> usize {
    !(a ^ b) & ((1usize << k) - 1)
}

/// `true` iff `y` shifts every satisfying point of `p` to a falsifying one:
/// `p(x) = 1` implies `p(y ∘ x) = 0`, with `∘` the coordinatewise product.
pub fn is_shift_vector(p: &Predicate, y: &[i8]) -> Result<bool, PredError> {
    if y.len() != p.arity() {
        return Err(PredError::ArityMismatch {
            expected: p.arity(),
            got: y.len(),
        });
    }
    let t = p.require_table("is_shift_vector")?;
    let yi = point_index(y);
    let k = p.arity();
    Ok((0..t.num_points()).all(|x| !t.get(x) || !t.get(index_product(yi, x, k))))
}

/// Randomized search for a shift vector of the Huang predicate `H_k`:
/// sample candidates, verify against every satisfying point, return the
/// first verified one. `None` when the budget is exhausted (for small `k`
/// no shift vector need exist).
pub fn find_shift_vector(
    k: usize,
    budget: u64,
    rng: &mut impl Rng,
) -> Result<Option<Vec<i8>>, PredError> {
    let p = Predicate::named(Family::Huang { k })?;
    let t = p.require_table("find_shift_vector")?;
    let arity = p.arity();
    let sat: Vec<usize> = (0..t.num_points()).filter(|&i| t.get(i)).collect();
    for _ in 0..budget {
        let y = rng.gen_range(0..t.num_points());
        if sat.iter().all(|&x| !t.get(index_product(y, x, arity))) {
            return Ok(Some(index_point(y, arity)));
        }
    }
    Ok(None)
}

/// Default candidate budget for [`find_shift_vector`]: `10 * 2^min(K, 20)`.
pub fn shift_vector_budget(arity: usize) -> u64 {
    10 * (1u64 << arity.min(20))
}

/// Exhaustive variant of [`find_shift_vector`]: scan all `2^K` candidates in
/// index order; settles existence for materializable `k`.
pub fn find_shift_vector_exhaustive(k: usize) -> Result<Option<Vec<i8>>, PredError> {
    let p = Predicate::named(Family::Huang { k })?;
    let t = p.require_table("find_shift_vector")?;
    let arity = p.arity();
    let sat: Vec<usize> = (0..t.num_points()).filter(|&i| t.get(i)).collect();
    Ok((0..t.num_points())
        .find(|&y| sat.iter().all(|&x| !t.get(index_product(y, x, arity))))
        .map(|y| index_point(y, arity)))
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PredicateWire {
    Named { family: String, params: Vec<usize> },
    Raw { arity: usize, table_hex: String },
}

impl Serialize for Predicate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let wire = match self.family {
            Some(f) => PredicateWire::Named {
                family: f.name().to_string(),
                params: f.params(),
            },
            None => PredicateWire::Raw {
                arity: self.arity,
                table_hex: self.table().expect("raw predicates are tables").to_hex(),
            },
        };
        wire.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Predicate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Predicate, D::Error> {
        use serde::de::Error;
        match PredicateWire::deserialize(d)? {
            PredicateWire::Named { family, params } => {
                let spec = format!(
                    "{family}:{}",
                    params
                        .iter()
                        .map(|p| p.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                Predicate::parse(&spec).map_err(D::Error::custom)
            }
            PredicateWire::Raw { arity, table_hex } => {
                if arity == 0 || arity > MAX_TABLE_ARITY {
                    return Err(D::Error::custom(format!("arity {arity} out of range")));
                }
                TruthTable::from_hex(arity, &table_hex)
                    .map(Predicate::from_table)
                    .map_err(D::Error::custom)
            }
        }
    }
}

/// Convenience constructors.
impl Predicate {
    pub fn sat(k: usize) -> Predicate {
        Predicate::named(Family::Sat { k }).expect("arity in range")
    }
    pub fn maj(k: usize) -> Predicate {
        Predicate::named(Family::Maj { k }).expect("arity in range")
    }
    pub fn parity(k: usize) -> Predicate {
        Predicate::named(Family::Parity { k }).expect("arity in range")
    }
    pub fn and(k: usize) -> Predicate {
        Predicate::named(Family::And { k }).expect("arity in range")
    }
    pub fn threshold(k: usize, l: usize) -> Predicate {
        Predicate::named(Family::Threshold { k, l }).expect("params in range")
    }
}

/// Exact expectation of `p` under `d`.
pub fn expectation(p: &Predicate, d: &RationalDistribution) -> Result<Rat, PredError> {
    if p.arity() != d.arity() {
        return Err(PredError::ArityPairMismatch(p.arity(), d.arity()));
    }
    let t = p.require_table("expectation")?;
    let mut sum = Rat::zero();
    for idx in 0..t.num_points() {
        if t.get(idx) {
            sum += d.weight(idx).clone();
        }
    }
    Ok(sum)
}
