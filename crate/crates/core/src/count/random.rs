use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

use super::spectrum::total_distinct_slice;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomRow {
    pub n: usize,
    pub samples: usize,
    pub mean_total: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RandomStatReport {
    pub seed: u64,
    pub rows: Vec<RandomRow>,
    /// Least-squares slope of `ln(mean)` against `ln(n)`; absent with fewer than
    /// two rows of positive mean.
    pub exponent: Option<f64>,
}

/// Monte Carlo mean of the total distinct abelian-square count of uniform random
/// binary words, for each length in `ladder`.
///
/// Words are drawn in ladder order from one ChaCha8 stream seeded with `seed`,
/// so the report is a pure function of its arguments.
pub fn random_word_statistic(
    ladder: &[usize],
    samples: usize,
    seed: u64,
) -> Result<RandomStatReport> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(ladder.len());
    for &n in ladder {
        let words: Vec<Vec<u8>> = (0..samples)
            .map(|_| (0..n).map(|_| rng.gen_range(0..2u8)).collect())
            .collect();
        let sum: u64 = words.par_iter().map(|w| total_distinct_slice(w, 2)).sum();
        rows.push(RandomRow {
            n,
            samples,
            mean_total: sum as f64 / samples as f64,
        });
    }
    let points: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.mean_total > 0.0 && r.n > 0)
        .map(|r| ((r.n as f64).ln(), r.mean_total.ln()))
        .collect();
    Ok(RandomStatReport {
        seed,
        rows,
        exponent: fit_slope(&points),
    })
}

/// Exact mean total over all `2^n` binary words of length `n`.
pub fn exhaustive_mean_total(n: usize) -> Result<BigRational> {
    if n > 24 {
        return Err(Error::BudgetExceeded {
            size: 1u128 << n,
            budget: 1 << 24,
        });
    }
    let sum: u64 = (0u32..1 << n)
        .into_par_iter()
        .map(|bits| {
            let w: Vec<u8> = (0..n).map(|i| (bits >> i & 1) as u8).collect();
            total_distinct_slice(&w, 2)
        })
        .sum();
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(1u64 << n)))
}

/// Ordinary least-squares slope.
pub fn fit_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let k = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small() {
        // aa, ab, ba, bb -> 1, 0, 0, 1
        assert_eq!(
            exhaustive_mean_total(2).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(
            exhaustive_mean_total(1).unwrap(),
            BigRational::from_integer(0.into())
        );
    }

    #[test]
    fn length_one_has_no_squares() {
        let r = random_word_statistic(&[1], 10, 7).unwrap();
        assert_eq!(r.rows[0].mean_total, 0.0);
        assert_eq!(r.exponent, None);
    }

    #[test]
    fn deterministic_under_seed() {
        let a = random_word_statistic(&[16, 32], 20, 42).unwrap();
        let b = random_word_statistic(&[16, 32], 20, 42).unwrap();
        assert_eq!(a, b);
        assert!(random_word_statistic(&[16], 0, 1).is_err());
    }

    #[test]
    fn slope_of_line() {
        let pts: Vec<(f64, f64)> = (1..5).map(|x| (x as f64, 1.5 * x as f64 + 2.0)).collect();
        assert!((fit_slope(&pts).unwrap() - 1.5).abs() < 1e-12);
    }
}
