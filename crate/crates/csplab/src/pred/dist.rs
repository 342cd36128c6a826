//! Exact rational distributions on `{-1,+1}^K` and the explicit
//! pairwise-uniform constructions used by the reductions.

use super::PredError;
use crate::sign::{index_ones, sign_of_bit};
use crate::{rat, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

/// First pair-marginal equation violated by a distribution, if any.
/// Coordinates are 0-based; `a`/`b` are the fixed values of `x_i`/`x_j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairViolation {
    pub i: usize,
    pub j: usize,
    pub a: i8,
    pub b: i8,
}

/// Exact probability vector over `{-1,+1}^arity`, indexed by point index.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalDistribution {
    arity: usize,
    weights: Vec<Rat>,
}

impl RationalDistribution {
    /// Validates: `2^arity` weights, all nonnegative, summing to exactly 1.
    pub fn new(arity: usize, weights: Vec<Rat>) -> Result<RationalDistribution, PredError> {
        if weights.len() != 1usize << arity {
            return Err(PredError::BadDistribution(format!(
                "expected {} weights, got {}",
                1usize << arity,
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| w.is_negative()) {
            return Err(PredError::BadDistribution(format!(
                "negative weight at index {i}"
            )));
        }
        let total: Rat = weights.iter().sum();
        if !total.is_one() {
            return Err(PredError::BadDistribution(format!(
                "weights sum to {total}, not 1"
            )));
        }
        Ok(RationalDistribution { arity, weights })
    }

    pub fn uniform(arity: usize) -> RationalDistribution {
        let n = 1usize << arity;
        RationalDistribution {
            arity,
            weights: vec![Rat::new(BigInt::one(), BigInt::from(n)); n],
        }
    }

    pub fn point_mass(arity: usize, idx: usize) -> RationalDistribution {
        let mut weights = vec![Rat::zero(); 1 << arity];
        weights[idx] = Rat::one();
        RationalDistribution { arity, weights }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn weight(&self, idx: usize) -> &Rat {
        &self.weights[idx]
    }

    pub fn weights(&self) -> &[Rat] {
        &self.weights
    }

    /// `Pr(x_i = +1)`.
    pub fn marginal_single(&self, i: usize) -> Rat {
        self.mass(|x| (x >> i) & 1 == 1)
    }

    /// `Pr(x_i = a, x_j = b)`.
    pub fn marginal_pair(&self, i: usize, j: usize, a: i8, b: i8) -> Rat {
        let (ba, bb) = (crate::sign::bit(a), crate::sign::bit(b));
        self.mass(|x| (x >> i) & 1 == ba && (x >> j) & 1 == bb)
    }

    fn mass(&self, mut pred: impl FnMut(usize) -> bool) -> Rat {
        self.weights
            .iter()
            .enumerate()
            .filter(|(x, _)| pred(*x))
            .map(|(_, w)| w)
            .sum()
    }

    /// Exact check of all `4 * C(K,2)` pair-marginal equations; returns the
    /// first violation in scan order (`i < j` ascending, then `(a,b)` with
    /// `a` the faster coordinate, `-1` before `+1`).
    pub fn is_pairwise_uniform(&self) -> Option<PairViolation> {
        let quarter = rat(1, 4);
        for i in 0..self.arity {
            for j in i + 1..self.arity {
                for pat in 0..4usize {
                    let a = sign_of_bit(pat & 1);
                    let b = sign_of_bit(pat >> 1);
                    if self.marginal_pair(i, j, a, b) != quarter {
                        return Some(PairViolation { i, j, a, b });
                    }
                }
            }
        }
        None
    }

    /// Product distribution on the concatenation of the coordinate blocks.
    pub fn product(&self, other: &RationalDistribution) -> Result<RationalDistribution, PredError> {
        let arity = self.arity + other.arity;
        if arity > 20 {
            return Err(PredError::BadDistribution(format!(
                "product arity {arity} too large to materialize"
            )));
        }
        let mut weights = Vec::with_capacity(1 << arity);
        for hi in 0..(1usize << other.arity) {
            for lo in 0..(1usize << self.arity) {
                weights.push(&self.weights[lo] * &other.weights[hi]);
            }
        }
        Ok(RationalDistribution { arity, weights })
    }

    /// Draw a point index. Exact: a uniform integer below the common
    /// denominator is walked through the cumulative numerators.
    pub fn sample(&self, rng: &mut impl Rng) -> usize {
        let denom = self
            .weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let numers: Vec<BigInt> = self
            .weights
            .iter()
            .map(|w| w.numer() * (&denom / w.denom()))
            .collect();
        let total = denom
            .to_u64()
            .expect("sampling requires a u64 common denominator");
        let mut r = rng.gen_range(0..total) as i64;
        for (idx, n) in numers.iter().enumerate() {
            r -= n.to_i64().expect("numerator fits");
            if r < 0 {
                return idx;
            }
        }
        unreachable!("weights sum to 1")
    }
}

/// The three-part mixture on `{0,1}^4` behind the heavy-minus block sampler:
/// weight-1 vectors with total mass `140/192`, weight-2 with `30/192`, the
/// all-ones vector with `22/192`, each part uniform on its support. The
/// coordinates are pairwise independent with success probability `3/8`, and
/// the all-zero vector has probability 0.
pub fn z_distribution() -> RationalDistribution {
    let mut weights = vec![Rat::zero(); 16];
    for (idx, w) in weights.iter_mut().enumerate() {
        *w = match index_ones(idx, 4) {
            1 => rat(140, 192) * rat(1, 4),
            2 => rat(30, 192) * rat(1, 6),
            4 => rat(22, 192),
            _ => Rat::zero(),
        };
    }
    RationalDistribution::new(4, weights).expect("mixture weights sum to 1")
}

/// The pairwise-uniform witness for the strict majority of `K = 2t+1`
/// coordinates: mass `1/(2t+2)` on the all-minus point and the rest uniform
/// on the points with exactly `t+1` plus-ones. Its expectation under
/// majority is `1 - 1/(K+1)`.
pub fn maj_witness_distribution(k: usize) -> Result<RationalDistribution, PredError> {
    if k.is_multiple_of(2) || k < 3 {
        return Err(PredError::BadParams {
            family: "maj",
            msg: format!("witness needs odd k >= 3, got {k}"),
        });
    }
    let t = (k - 1) / 2;
    let n = 1usize << k;
    let count = binomial(k, t + 1);
    let mut weights = vec![Rat::zero(); n];
    weights[0] = rat(1, (2 * t + 2) as i64);
    let each = rat((2 * t + 1) as i64, (2 * t + 2) as i64) / Rat::from(BigInt::from(count));
    for (idx, w) in weights.iter_mut().enumerate().skip(1) {
        if index_ones(idx, k) as usize == t + 1 {
            *w = each.clone();
        }
    }
    RationalDistribution::new(k, weights)
}

/// The pairwise-uniform distribution supported on `T(k, ceil(k/2)-1)^{-1}(1)`:
/// mass `1/(k+1)` on the all-ones point, the rest uniform on points with
/// exactly `ceil(k/2)-1` plus-ones.
pub fn tkl_witness_distribution(k: usize) -> Result<RationalDistribution, PredError> {
    if k.is_multiple_of(2) || k < 3 {
        return Err(PredError::BadParams {
            family: "t",
            msg: format!("witness needs odd k >= 3, got {k}"),
        });
    }
    let l = k.div_ceil(2) - 1;
    let n = 1usize << k;
    let count = binomial(k, l);
    let mut weights = vec![Rat::zero(); n];
    weights[n - 1] = rat(1, (k + 1) as i64);
    let each = rat(k as i64, (k + 1) as i64) / Rat::from(BigInt::from(count));
    for (idx, w) in weights.iter_mut().enumerate().take(n - 1) {
        if index_ones(idx, k) as usize == l {
            *w = each.clone();
        }
    }
    RationalDistribution::new(k, weights)
}

/// Uniform distribution on the odd-weight points; pairwise uniform for
/// `K >= 3` and supported inside the parity predicate's satisfying set.
pub fn parity_witness_distribution(k: usize) -> Result<RationalDistribution, PredError> {
    if k < 3 {
        return Err(PredError::BadParams {
            family: "parity",
            msg: format!("witness needs k >= 3, got {k}"),
        });
    }
    let n = 1usize << k;
    let each = rat(1, (n / 2) as i64);
    let weights = (0..n)
        .map(|idx| {
            if index_ones(idx, k) % 2 == 1 {
                each.clone()
            } else {
                Rat::zero()
            }
        })
        .collect();
    RationalDistribution::new(k, weights)
}

fn binomial(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..r.min(n - r) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Fraction of `{-1,+1}^k` with strictly more than `ceil(k/2)` minus-ones,
/// by exact binomial counting.
pub fn dr_heavy_fraction(k: usize) -> Rat {
    let cutoff = k.div_ceil(2);
    let count: u64 = (0..=k)
        .filter(|&ones| k - ones > cutoff)
        .map(|ones| binomial(k, ones))
        .sum();
    Rat::new(count.into(), BigInt::from(1u64 << k))
}

/// Sampler for the four-block heavy-minus construction on
/// `({-1,+1}^k)^4`: draw the mixing vector from [`z_distribution`], then put
/// block `i` uniformly in the heavy-minus set `B` when `Z_i = 1` and
/// uniformly in its complement otherwise. With `|B| = (3/8) 2^k` each block
/// is marginally uniform, and the pairwise independence of the mixing
/// coordinates makes the whole vector pairwise uniform.
#[derive(Clone, Debug)]
pub struct DrSampler {
    k: usize,
    z: RationalDistribution,
    /// Point indices of the heavy-minus set, ascending; `|b| = (3/8) 2^k`.
    b: Vec<usize>,
    /// Complement of `b`, ascending.
    bc: Vec<usize>,
}

impl DrSampler {
    pub fn new(k: usize) -> Result<DrSampler, PredError> {
        if k < 3 {
            return Err(PredError::BadParams {
                family: "dr",
                msg: format!("need k >= 3, got {k}"),
            });
        }
        let fraction = dr_heavy_fraction(k);
        let needed = rat(3, 8);
        if fraction < needed {
            return Err(PredError::BadParams {
                family: "dr",
                msg: format!("heavy-minus fraction at k={k} is {fraction} < 3/8; pick a larger k"),
            });
        }
        let cutoff = k.div_ceil(2);
        let size = 3 * (1usize << k) / 8;
        let mut b = Vec::with_capacity(size);
        let mut bc = Vec::with_capacity((1 << k) - size);
        for idx in 0..(1usize << k) {
            if b.len() < size && k - index_ones(idx, k) as usize > cutoff {
                b.push(idx);
            } else {
                bc.push(idx);
            }
        }
        Ok(DrSampler {
            k,
            z: z_distribution(),
            b,
            bc,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// One draw: a sign vector of length `4k`, blocks in order.
    pub fn sample(&self, rng: &mut impl Rng) -> Vec<i8> {
        let z = self.z.sample(rng);
        let mut out = Vec::with_capacity(4 * self.k);
        for q in 0..4 {
            let set = if (z >> q) & 1 == 1 { &self.b } else { &self.bc };
            let idx = set[rng.gen_range(0..set.len())];
            for j in 0..self.k {
                out.push(sign_of_bit((idx >> j) & 1));
            }
        }
        out
    }

    fn cond_single(&self, in_b: bool, coord: usize, value: i8) -> Rat {
        let set = if in_b { &self.b } else { &self.bc };
        let want = crate::sign::bit(value);
        let hits = set.iter().filter(|&&x| (x >> coord) & 1 == want).count();
        rat(hits as i64, set.len() as i64)
    }

    fn cond_pair(&self, in_b: bool, c1: usize, v1: i8, c2: usize, v2: i8) -> Rat {
        let set = if in_b { &self.b } else { &self.bc };
        let (w1, w2) = (crate::sign::bit(v1), crate::sign::bit(v2));
        let hits = set
            .iter()
            .filter(|&&x| (x >> c1) & 1 == w1 && (x >> c2) & 1 == w2)
            .count();
        rat(hits as i64, set.len() as i64)
    }

    /// Exact `Pr(coordinate c = value)` of the sampled vector.
    pub fn marginal_single(&self, c: usize, value: i8) -> Rat {
        let (q, o) = (c / self.k, c % self.k);
        let p_b = self.z.marginal_single(q);
        &p_b * self.cond_single(true, o, value)
            + (Rat::one() - &p_b) * self.cond_single(false, o, value)
    }

    /// Exact `Pr(coordinate c1 = v1, coordinate c2 = v2)`, composed from the
    /// mixing distribution's exact pair marginals and the in/out-of-`B`
    /// conditionals. Requires `c1 != c2`.
    pub fn marginal_pair(&self, c1: usize, v1: i8, c2: usize, v2: i8) -> Rat {
        assert_ne!(c1, c2);
        let (q1, o1) = (c1 / self.k, c1 % self.k);
        let (q2, o2) = (c2 / self.k, c2 % self.k);
        let mut total = Rat::zero();
        if q1 == q2 {
            for zbit in 0..2usize {
                let pz = self.z.mass(|z| (z >> q1) & 1 == zbit);
                total += pz * self.cond_pair(zbit == 1, o1, v1, o2, v2);
            }
        } else {
            for z1 in 0..2usize {
                for z2 in 0..2usize {
                    let pz = self.z.mass(|z| (z >> q1) & 1 == z1 && (z >> q2) & 1 == z2);
                    total +=
                        pz * self.cond_single(z1 == 1, o1, v1) * self.cond_single(z2 == 1, o2, v2);
                }
            }
        }
        total
    }

    /// Exact pairwise-uniformity check over all `C(4k, 2)` coordinate pairs.
    pub fn is_pairwise_uniform(&self) -> Option<(usize, usize, i8, i8)> {
        let quarter = rat(1, 4);
        let d = 4 * self.k;
        for c1 in 0..d {
            for c2 in c1 + 1..d {
                for pat in 0..4usize {
                    let a = sign_of_bit(pat & 1);
                    let b = sign_of_bit(pat >> 1);
                    if self.marginal_pair(c1, a, c2, b) != quarter {
                        return Some((c1, c2, a, b));
                    }
                }
            }
        }
        None
    }

    /// Every sampled vector has at least one block in the heavy-minus set,
    /// i.e. the support lies inside the "not all four blocks pass the
    /// threshold" event. True by construction since the all-zero mixing
    /// vector has probability 0; exposed for tests.
    pub fn some_block_heavy(&self, x: &[i8]) -> bool {
        assert_eq!(x.len(), 4 * self.k);
        let cutoff = self.k.div_ceil(2);
        (0..4).any(|q| {
            x[q * self.k..(q + 1) * self.k]
                .iter()
                .filter(|&&v| v == -1)
                .count()
                > cutoff
        })
    }
}

/// Smallest `k` whose heavy-minus fraction reaches `3/8`, by scanning the
/// exact binomial tails.
pub fn smallest_dr_k() -> usize {
    (3..).find(|&k| dr_heavy_fraction(k) >= rat(3, 8)).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pred::{expectation, Predicate};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn uniform_is_pairwise_uniform() {
        assert_eq!(RationalDistribution::uniform(3).is_pairwise_uniform(), None);
    }

    #[test]
    fn point_mass_first_violation() {
        let d = RationalDistribution::point_mass(3, 0b111);
        assert_eq!(
            d.is_pairwise_uniform(),
            Some(PairViolation {
                i: 0,
                j: 1,
                a: -1,
                b: -1
            })
        );
    }

    #[test]
    fn bad_distributions_rejected() {
        assert!(RationalDistribution::new(2, vec![Rat::one(); 3]).is_err());
        assert!(RationalDistribution::new(1, vec![rat(3, 2), rat(-1, 2)]).is_err());
        assert!(RationalDistribution::new(1, vec![rat(1, 2), rat(1, 4)]).is_err());
    }

    #[test]
    fn maj_witness_matches_claim() {
        for k in [3usize, 5, 7] {
            let d = maj_witness_distribution(k).unwrap();
            assert_eq!(d.is_pairwise_uniform(), None, "k={k}");
            let e = expectation(&Predicate::maj(k), &d).unwrap();
            assert_eq!(e, Rat::one() - rat(1, (k + 1) as i64));
        }
    }

    #[test]
    fn maj3_witness_explicit_weights() {
        // quarter on the all-minus point, the rest split over the three
        // points with exactly two plus-ones
        let d = maj_witness_distribution(3).unwrap();
        assert_eq!(*d.weight(0), rat(1, 4));
        for idx in [0b011usize, 0b101, 0b110] {
            assert_eq!(*d.weight(idx), rat(1, 4));
        }
        assert_eq!(*d.weight(0b111), rat(0, 1));
    }

    #[test]
    fn tkl_witness_supported_and_uniform() {
        for k in [3usize, 5] {
            let d = tkl_witness_distribution(k).unwrap();
            assert_eq!(d.is_pairwise_uniform(), None);
            let l = k.div_ceil(2) - 1;
            let t = Predicate::threshold(k, l);
            assert_eq!(expectation(&t, &d).unwrap(), Rat::one());
        }
    }

    #[test]
    fn parity_witness_supported_and_uniform() {
        for k in [3usize, 4, 5] {
            let d = parity_witness_distribution(k).unwrap();
            assert_eq!(d.is_pairwise_uniform(), None);
            assert_eq!(expectation(&Predicate::parity(k), &d).unwrap(), Rat::one());
        }
    }

    #[test]
    fn z_distribution_exact_marginals() {
        let z = z_distribution();
        for i in 0..4 {
            assert_eq!(z.marginal_single(i), rat(3, 8));
            for j in 0..4 {
                if i != j {
                    assert_eq!(z.marginal_pair(i, j, 1, 1), rat(9, 64));
                    // full independent-pair product with p = 3/8
                    assert_eq!(z.marginal_pair(i, j, 1, -1), rat(15, 64));
                    assert_eq!(z.marginal_pair(i, j, -1, -1), rat(25, 64));
                }
            }
        }
        assert_eq!(*z.weight(0), Rat::zero());
    }

    #[test]
    fn z_sampling_respects_support() {
        let z = z_distribution();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..2000 {
            let idx = z.sample(&mut rng);
            assert!(matches!(index_ones(idx, 4), 1 | 2 | 4));
        }
    }

    #[test]
    fn dr_k7_fraction_rejected() {
        assert_eq!(dr_heavy_fraction(7), rat(29, 128));
        assert!(DrSampler::new(7).is_err());
    }

    #[test]
    fn dr_smallest_admissible_k_frozen() {
        // scanned by exact binomial tails; first admissible k is 10
        assert_eq!(smallest_dr_k(), 10);
        assert!(dr_heavy_fraction(10) >= rat(3, 8));
        assert!(dr_heavy_fraction(9) < rat(3, 8));
    }

    #[test]
    fn dr_sampler_exact_marginals() {
        let s = DrSampler::new(10).unwrap();
        // single-coordinate marginals are uniform
        for c in [0usize, 9, 10, 35] {
            assert_eq!(s.marginal_single(c, 1), rat(1, 2));
        }
        // spot-check pair uniformity within and across blocks
        assert_eq!(s.marginal_pair(0, 1, 1, 1), rat(1, 4));
        assert_eq!(s.marginal_pair(0, 1, 17, -1), rat(1, 4));
        assert_eq!(s.marginal_pair(12, -1, 33, -1), rat(1, 4));
    }

    #[test]
    fn dr_sampler_support_has_a_heavy_block() {
        let s = DrSampler::new(10).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let x = s.sample(&mut rng);
            assert!(s.some_block_heavy(&x));
        }
    }

    #[test]
    fn product_distribution_composes() {
        let d = RationalDistribution::uniform(2)
            .product(&RationalDistribution::point_mass(1, 1))
            .unwrap();
        assert_eq!(d.arity(), 3);
        assert_eq!(*d.weight(0b100), rat(1, 4));
        assert_eq!(*d.weight(0b000), Rat::zero());
    }
}
