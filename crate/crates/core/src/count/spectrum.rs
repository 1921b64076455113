use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{distinct_factors, DedupEngine, FactorIndex, PrefixParikhTable, Word};

/// Number of distinct (or inequivalent) abelian-square factors per even length.
///
/// Only lengths with a nonzero count are stored.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareSpectrum {
    pub word_len: usize,
    pub counts: BTreeMap<usize, u64>,
    pub total: u64,
}

impl SquareSpectrum {
    pub fn from_counts(word_len: usize, counts: impl IntoIterator<Item = (usize, u64)>) -> Self {
        let counts: BTreeMap<usize, u64> = counts.into_iter().filter(|&(_, c)| c > 0).collect();
        let total = counts.values().sum();
        Self {
            word_len,
            counts,
            total,
        }
    }

    /// Count at length `m` (zero when absent, always zero for odd `m`).
    pub fn at(&self, m: usize) -> u64 {
        self.counts.get(&m).copied().unwrap_or(0)
    }

    /// Restriction to lengths `<= max_len`.
    pub fn truncated(&self, max_len: usize) -> Self {
        Self::from_counts(
            self.word_len,
            self.counts.range(..=max_len).map(|(&m, &c)| (m, c)),
        )
    }
}

/// Positions `i` where the window of length `2h` starting at `i` is an abelian square.
pub(crate) fn square_starts(table: &PrefixParikhTable, h: usize) -> Vec<usize> {
    let n = table.len();
    if 2 * h > n || h == 0 {
        return Vec::new();
    }
    (0..=n - 2 * h)
        .filter(|&i| table.halves_equal(i, h))
        .collect()
}

pub(crate) fn count_at_with(index: &FactorIndex<'_>, table: &PrefixParikhTable, m: usize) -> u64 {
    if m == 0 || m % 2 == 1 {
        return 0;
    }
    let starts = square_starts(table, m / 2);
    if starts.is_empty() {
        0
    } else {
        index.count_distinct(m, &starts) as u64
    }
}

/// Distinct abelian squares of length exactly `m` in `w`.
pub fn square_count_at(w: &Word, m: usize) -> u64 {
    let table = PrefixParikhTable::new(w);
    let index = FactorIndex::build(w.symbols(), DedupEngine::default());
    count_at_with(&index, &table, m)
}

/// Distinct abelian-square factors of `w`, per even length.
pub fn spectrum(w: &Word) -> SquareSpectrum {
    spectrum_up_to(w, w.len(), DedupEngine::default())
}

/// Spectrum restricted to lengths `<= max_len`, using the chosen dedup engine.
pub fn spectrum_up_to(w: &Word, max_len: usize, engine: DedupEngine) -> SquareSpectrum {
    let table = PrefixParikhTable::new(w);
    let index = FactorIndex::build(w.symbols(), engine);
    let max_len = max_len.min(w.len());
    let counts: Vec<(usize, u64)> = (1..=max_len / 2)
        .into_par_iter()
        .map(|h| (2 * h, count_at_with(&index, &table, 2 * h)))
        .collect();
    SquareSpectrum::from_counts(w.len(), counts)
}

/// Sequential total over a raw symbol slice; used by exhaustive searches.
pub(crate) fn total_distinct_slice(symbols: &[u8], sigma: usize) -> u64 {
    let table = PrefixParikhTable::from_symbols(symbols, sigma);
    let n = symbols.len();
    let mut total = 0u64;
    let mut seen: HashSet<&[u8]> = HashSet::new();
    for h in 1..=n / 2 {
        seen.clear();
        for i in 0..=n - 2 * h {
            if table.halves_equal(i, h) {
                seen.insert(&symbols[i..i + 2 * h]);
            }
        }
        total += seen.len() as u64;
    }
    total
}

/// Abelian squares counted up to Parikh equivalence of their halves.
pub fn inequivalent_spectrum(w: &Word) -> SquareSpectrum {
    let table = PrefixParikhTable::new(w);
    let n = w.len();
    let counts = (1..=n / 2).map(|h| {
        let halves: HashSet<Vec<u32>> = square_starts(&table, h)
            .into_iter()
            .map(|i| (0..w.sigma()).map(|s| table.count(s, i, h)).collect())
            .collect();
        (2 * h, halves.len() as u64)
    });
    SquareSpectrum::from_counts(n, counts)
}

/// Total inequivalent abelian squares of a binary slice.
pub(crate) fn inequivalent_total_binary(symbols: &[u8]) -> u64 {
    let table = PrefixParikhTable::from_symbols(symbols, 2);
    let n = symbols.len();
    let mut total = 0u64;
    let mut seen = vec![false; n / 2 + 1];
    for h in 1..=n / 2 {
        seen[..=h].iter_mut().for_each(|s| *s = false);
        for i in 0..=n - 2 * h {
            if table.halves_equal(i, h) {
                let a = table.count(0, i, h) as usize;
                if !seen[a] {
                    seen[a] = true;
                    total += 1;
                }
            }
        }
    }
    total
}

/// Mean of the total abelian-square count over the distinct length-`n` factors of `w`.
pub fn per_factor_average(w: &Word, n: usize) -> Result<BigRational> {
    if n > w.len() {
        return Err(Error::OutOfRange {
            start: 0,
            end: n,
            len: w.len(),
        });
    }
    let (sum, count) = per_factor_stats(w, n)?.sum_and_count();
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(count)))
}

/// Totals of every distinct length-`n` factor, for mean and minimum diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerFactorStats {
    pub len: usize,
    pub totals: Vec<u64>,
}

impl PerFactorStats {
    pub fn sum_and_count(&self) -> (u64, u64) {
        (self.totals.iter().sum(), self.totals.len() as u64)
    }

    pub fn min(&self) -> u64 {
        self.totals.iter().copied().min().unwrap_or(0)
    }

    pub fn mean(&self) -> f64 {
        let (s, c) = self.sum_and_count();
        s as f64 / c as f64
    }
}

pub fn per_factor_stats(w: &Word, n: usize) -> Result<PerFactorStats> {
    let ids = distinct_factors(w, n)?;
    let totals = ids
        .par_iter()
        .map(|id| total_distinct_slice(&w.symbols()[id.start..id.start + id.len], w.sigma()))
        .collect();
    Ok(PerFactorStats { len: n, totals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thue_morse::tm_prefix;
    use crate::words::is_abelian_square;
    use crate::Alphabet;
    use std::collections::BTreeSet;

    fn w(s: &str) -> Word {
        Word::from_letters(s).unwrap()
    }

    /// Cubic oracle: every factor tested with the abelian-power predicate, deduped by string.
    fn naive_spectrum(word: &Word) -> BTreeMap<usize, u64> {
        let n = word.len();
        let mut out = BTreeMap::new();
        for m in (2..=n).step_by(2) {
            let set: BTreeSet<String> = (0..=n - m)
                .map(|i| word.factor(i, m).unwrap())
                .filter(is_abelian_square)
                .map(|f| f.to_string())
                .collect();
            if !set.is_empty() {
                out.insert(m, set.len() as u64);
            }
        }
        out
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(spectrum(&w("ababa")).counts, BTreeMap::from([(4, 2)]));
        let s = spectrum(&w("aabaabaab"));
        assert_eq!(s.counts, BTreeMap::from([(2, 1), (4, 1), (6, 3), (8, 1)]));
        assert_eq!(s.total, 6);
        let ab = spectrum(&w("ab"));
        assert!(ab.counts.is_empty());
        assert_eq!(ab.total, 0);
    }

    #[test]
    fn inequivalent_examples() {
        assert_eq!(
            inequivalent_spectrum(&w("ababa")).counts,
            BTreeMap::from([(4, 1)])
        );
        assert_eq!(
            inequivalent_spectrum(&w("aa")).counts,
            BTreeMap::from([(2, 1)])
        );
        // oracle values: half-Parikh sets per length
        assert_eq!(
            inequivalent_spectrum(&w("aabbaabb")).counts,
            BTreeMap::from([(2, 2), (4, 1), (6, 2), (8, 1)])
        );
        assert_eq!(
            spectrum(&w("aabbaabb")).counts,
            BTreeMap::from([(2, 2), (4, 2), (6, 2), (8, 1)])
        );
    }

    #[test]
    fn averages() {
        assert_eq!(
            per_factor_average(&w("aaaa"), 2).unwrap(),
            BigRational::from_integer(1.into())
        );
        assert_eq!(
            per_factor_average(&w("ababa"), 4).unwrap(),
            BigRational::from_integer(1.into())
        );
        let avg = per_factor_average(&tm_prefix(1 << 12), 64).unwrap();
        assert_eq!(avg, BigRational::new(30944.into(), 95.into()));
        assert!(per_factor_average(&w("ab"), 3).is_err());
    }

    #[test]
    fn oracle_equivalence_exhaustive() {
        let alpha = Alphabet::binary();
        for n in 0..=12usize {
            for bits in 0u32..(1 << n) {
                let sym: Vec<u8> = (0..n).map(|i| (bits >> i & 1) as u8).collect();
                let word = Word::new(alpha.clone(), sym.clone()).unwrap();
                let s = spectrum(&word);
                assert_eq!(s.counts, naive_spectrum(&word), "{word}");
                assert_eq!(s.total, total_distinct_slice(&sym, 2));
                let ineq = inequivalent_spectrum(&word);
                assert_eq!(ineq.total, inequivalent_total_binary(&sym));
                for (m, c) in &ineq.counts {
                    assert!(*c <= s.at(*m));
                }
            }
        }
    }

    #[test]
    fn engines_agree() {
        let t = tm_prefix(700);
        assert_eq!(
            spectrum_up_to(&t, 200, DedupEngine::RollingHash),
            spectrum_up_to(&t, 200, DedupEngine::SuffixArray)
        );
    }

    #[test]
    fn prefix_monotone() {
        let t = tm_prefix(300);
        let full = spectrum(&t);
        for l in [50, 120, 299] {
            let p = spectrum(&t.prefix(l).unwrap());
            for (m, c) in &p.counts {
                assert!(*c <= full.at(*m));
            }
        }
    }
}
