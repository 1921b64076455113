//! Exhaustive maximization over all words of a given length, up to renaming of letters.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

use super::random::fit_slope;
use super::spectrum::{inequivalent_total_binary, total_distinct_slice};

pub const MAX_SEARCH_LEN: usize = 26;
pub const DEFAULT_SEARCH_BUDGET: u128 = 1 << 28;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchResult {
    pub n: usize,
    pub sigma: usize,
    pub max_total: u64,
    /// Lexicographically smallest canonical word attaining the maximum.
    pub witness: String,
    pub words_examined: u64,
}

/// Canonical words: letters appear in first-occurrence order `0, 1, 2, ...`.
fn canonical_words(n: usize, sigma: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    fn rec(n: usize, sigma: usize, used: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 0..(used + 1).min(sigma) {
            cur.push(c as u8);
            rec(n, sigma, used.max(c + 1), cur, out);
            cur.pop();
        }
    }
    rec(n, sigma, 0, &mut cur, &mut out);
    out
}

fn search_space(n: usize, sigma: usize) -> u128 {
    (sigma as u128).saturating_pow(n.saturating_sub(1) as u32)
}

/// Maximum of `score` over canonical words of length `n` on `sigma` letters.
fn maximize(
    n: usize,
    sigma: usize,
    budget: u128,
    score: impl Fn(&[u8]) -> u64 + Sync,
) -> Result<(u64, Vec<u8>, u64)> {
    if n == 0 || sigma == 0 {
        return Err(Error::InvalidArgument(
            "search needs n >= 1 and sigma >= 1".into(),
        ));
    }
    if n > MAX_SEARCH_LEN {
        return Err(Error::BudgetExceeded {
            size: search_space(n, sigma),
            budget,
        });
    }
    let size = search_space(n, sigma);
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    // split on canonical prefixes, then walk each subtree sequentially
    let split = n.min(6);
    let prefixes = canonical_words(split, sigma);
    let rest = n - split;
    let results: Vec<(u64, Vec<u8>, u64)> = prefixes
        .par_iter()
        .map(|prefix| {
            let used = prefix.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
            let mut best = (0u64, Vec::new(), 0u64);
            let mut cur = prefix.clone();
            walk(n, sigma, used, rest, &mut cur, &mut best, &score);
            best
        })
        .collect();
    let examined = results.iter().map(|r| r.2).sum();
    let (max, witness) = results
        .into_iter()
        .filter(|r| r.2 > 0)
        .map(|r| (r.0, r.1))
        .fold((0u64, None::<Vec<u8>>), |acc, (t, w)| match acc.1 {
            Some(ref aw) if acc.0 > t || (acc.0 == t && *aw <= w) => acc,
            _ => (t, Some(w)),
        });
    Ok((max, witness.unwrap_or_default(), examined))
}

fn walk(
    n: usize,
    sigma: usize,
    used: usize,
    remaining: usize,
    cur: &mut Vec<u8>,
    best: &mut (u64, Vec<u8>, u64),
    score: &(impl Fn(&[u8]) -> u64 + Sync),
) {
    if remaining == 0 {
        let t = score(cur);
        best.2 += 1;
        if best.2 == 1 || t > best.0 || (t == best.0 && *cur < best.1) {
            best.0 = t;
            best.1 = cur.clone();
        }
        return;
    }
    for c in 0..(used + 1).min(sigma) {
        cur.push(c as u8);
        walk(n, sigma, used.max(c + 1), remaining - 1, cur, best, score);
        cur.pop();
    }
}

/// Largest number of distinct abelian-square factors in a word of length `n`
/// over at most `sigma` letters.
pub fn max_as_search(n: usize, sigma: usize, budget: u128) -> Result<SearchResult> {
    let (max_total, witness, words_examined) =
        maximize(n, sigma, budget, |w| total_distinct_slice(w, sigma))?;
    let witness = Word::new(Alphabet::with_size(sigma)?, witness)?.to_string();
    Ok(SearchResult {
        n,
        sigma,
        max_total,
        witness,
        words_examined,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequivalentRow {
    pub n: usize,
    pub max_total: u64,
    pub witness: String,
    /// `max_total / n^{3/2}`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequivalentProbe {
    pub rows: Vec<InequivalentRow>,
    /// Largest observed `max_total / n^{3/2}`.
    pub fitted_constant: f64,
    /// Log-log slope of the maxima over the probed lengths.
    pub fitted_exponent: Option<f64>,
}

/// Exhaustive maxima of inequivalent abelian-square totals over binary words of
/// length `2..=max_n`. Report only: nothing here is asserted.
pub fn inequivalent_probe(max_n: usize, budget: u128) -> Result<InequivalentProbe> {
    let mut rows = Vec::new();
    for n in 2..=max_n {
        let (max_total, witness, _) = maximize(n, 2, budget, inequivalent_total_binary)?;
        let witness = Word::new(Alphabet::binary(), witness)?.to_string();
        rows.push(InequivalentRow {
            n,
            max_total,
            witness,
            ratio: max_total as f64 / (n as f64).powf(1.5),
        });
    }
    let fitted_constant = rows.iter().map(|r| r.ratio).fold(0.0, f64::max);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.max_total > 0)
        .map(|r| ((r.n as f64).ln(), (r.max_total as f64).ln()))
        .collect();
    Ok(InequivalentProbe {
        rows,
        fitted_constant,
        fitted_exponent: fit_slope(&pts),
    })
}
