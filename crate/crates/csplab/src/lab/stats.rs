//! Small statistical helpers shared by the harness and its tests.

/// Wilson score interval for a binomial proportion at confidence `z`
/// (1.96 for 95%). Returns `(lower, upper)`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let p = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((center - half).max(0.0), (center + half).min(1.0))
}

/// Chi-square statistic against uniform expected counts.
pub fn chi_square_uniform(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    let expected = total as f64 / counts.len() as f64;
    counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wilson_basicss() {
        let (lo, hi) = wilson_interval(50, 100, 1.96);
        assert!(lo < 0.5 && 0.5 < hi);
        assert!(hi - lo < 0.25);
        let (lo0, hi0) = wilson_interval(0, 100_000, 1.96);
        assert_eq!(lo0, 0.0);
        assert!(hi0 < 1e-4 && hi0 > 0.0);
        let (lo1, hi1) = wilson_interval(100, 100, 1.96);
        assert!(lo1 > 0.95 && hi1 > 0.999);
    }

    #[test]
    fn chi_square_zero_when_exactly_uniform() {
        assert_eq!(chi_square_uniform(&[5, 5, 5, 5]), 0.0);
        assert!(chi_square_uniform(&[10, 0, 10, 0]) > 0.0);
    }
}
