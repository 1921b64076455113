use serde::Serialize;

use crate::error::{Error, Result};

use super::word::Word;

/// Per-letter occurrence counts of a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ParikhVector(pub Vec<usize>);

impl ParikhVector {
    pub fn zero(sigma: usize) -> Self {
        Self(vec![0; sigma])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// True when every component is divisible by `k`.
    pub fn divisible_by(&self, k: usize) -> bool {
        self.0.iter().all(|c| c % k == 0)
    }
}

pub fn parikh(w: &Word) -> ParikhVector {
    parikh_of(w.symbols(), w.sigma())
}

pub(crate) fn parikh_of(symbols: &[u8], sigma: usize) -> ParikhVector {
    let mut counts = vec![0; sigma];
    for &s in symbols {
        counts[s as usize] += 1;
    }
    ParikhVector(counts)
}

/// Cumulative Parikh vectors of all prefixes: row `i` is the Parikh vector of
/// the prefix of length `i`.
#[derive(Clone, Debug)]
pub struct PrefixParikhTable {
    sigma: usize,
    len: usize,
    rows: Vec<u32>,
}

impl PrefixParikhTable {
    pub fn new(w: &Word) -> Self {
        Self::from_symbols(w.symbols(), w.sigma())
    }

    pub fn from_symbols(symbols: &[u8], sigma: usize) -> Self {
        let mut rows = vec![0u32; (symbols.len() + 1) * sigma];
        for (i, &s) in symbols.iter().enumerate() {
            let (prev, next) = rows.split_at_mut((i + 1) * sigma);
            let prev = &prev[i * sigma..];
            next[..sigma].copy_from_slice(prev);
            next[s as usize] += 1;
        }
        Self {
            sigma,
            len: symbols.len(),
            rows,
        }
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    /// Length of the underlying word.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u32] {
        &self.rows[i * self.sigma..(i + 1) * self.sigma]
    }

    /// Parikh vector of the factor of length `m` starting at `i`.
    pub fn factor_parikh(&self, i: usize, m: usize) -> Result<ParikhVector> {
        let end = i
            .checked_add(m)
            .filter(|&e| e <= self.len)
            .ok_or(Error::OutOfRange {
                start: i,
                end: i.saturating_add(m),
                len: self.len,
            })?;
        let (lo, hi) = (self.row(i), self.row(end));
        Ok(ParikhVector(
            hi.iter().zip(lo).map(|(h, l)| (h - l) as usize).collect(),
        ))
    }

    /// Count of symbol `s` in the factor of length `m` at `i` (unchecked bounds).
    #[inline]
    pub(crate) fn count(&self, s: usize, i: usize, m: usize) -> u32 {
        self.rows[(i + m) * self.sigma + s] - self.rows[i * self.sigma + s]
    }

    /// Whether the factor of length `2h` at `i` splits into two blocks with equal
    /// Parikh vectors. Caller guarantees `i + 2h <= len`.
    #[inline]
    pub(crate) fn halves_equal(&self, i: usize, h: usize) -> bool {
        let (a, b, c) = (self.row(i), self.row(i + h), self.row(i + 2 * h));
        (0..self.sigma).all(|s| 2 * b[s] == a[s] + c[s])
    }
}
