//! Exact deduplication of factors.
//!
//! A factor is identified by its leftmost occurrence among the candidate
//! positions handed to the index. Both engines return identical results; the
//! hash engine is the default and the suffix-array engine exists for
//! cross-checking.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

/// Canonical identifier of a distinct factor: leftmost candidate occurrence and length.
///
/// When the candidate set is closed under "same string" (every occurrence of a
/// selected string is itself a candidate), `start` is the leftmost occurrence in
/// the word, so equal strings always get equal ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FactorId {
    pub start: usize,
    pub len: usize,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum DedupEngine {
    /// Two independent polynomial hashes mod 2^61 - 1, with every hash hit
    /// verified by direct comparison.
    #[default]
    RollingHash,
    /// Suffix array with LCP array.
    SuffixArray,
}

/// Index over one word answering "which of these windows are distinct strings".
#[derive(Clone, Debug)]
pub enum FactorIndex<'a> {
    Hash(HashIndex<'a>),
    Suffix(SuffixIndex<'a>),
}

impl<'a> FactorIndex<'a> {
    pub fn build(symbols: &'a [u8], engine: DedupEngine) -> Self {
        match engine {
            DedupEngine::RollingHash => FactorIndex::Hash(HashIndex::new(symbols)),
            DedupEngine::SuffixArray => FactorIndex::Suffix(SuffixIndex::new(symbols)),
        }
    }

    /// Distinct strings among the windows `[s, s+len)` for `s` in `starts`
    /// (ascending, each `s + len <= n`), sorted by `start`.
    pub fn distinct(&self, len: usize, starts: &[usize]) -> Vec<FactorId> {
        let mut reps: Vec<usize> = self
            .classify(len, starts)
            .into_iter()
            .filter(|&(s, r)| s == r)
            .map(|(s, _)| s)
            .collect();
        reps.dedup();
        reps.into_iter()
            .map(|start| FactorId { start, len })
            .collect()
    }

    /// Maps each candidate start to the start of its class representative.
    pub fn classify(&self, len: usize, starts: &[usize]) -> Vec<(usize, usize)> {
        debug_assert!(
            starts.windows(2).all(|w| w[0] < w[1]),
            "starts must be strictly ascending"
        );
        match self {
            FactorIndex::Hash(h) => h.classify(len, starts),
            FactorIndex::Suffix(s) => s.classify(len, starts),
        }
    }

    pub fn count_distinct(&self, len: usize, starts: &[usize]) -> usize {
        self.distinct(len, starts).len()
    }
}

const MODULUS: u64 = (1 << 61) - 1;
const BASES: [u64; 2] = [1_000_003, 911_382_323];

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    let p = a as u128 * b as u128;
    let lo = (p as u64) & MODULUS;
    let hi = (p >> 61) as u64;
    let s = lo + hi;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

#[derive(Clone, Debug)]
pub struct HashIndex<'a> {
    symbols: &'a [u8],
    prefix: [Vec<u64>; 2],
    powers: [Vec<u64>; 2],
}

impl<'a> HashIndex<'a> {
    pub fn new(symbols: &'a [u8]) -> Self {
        let n = symbols.len();
        let mut prefix = [vec![0u64; n + 1], vec![0u64; n + 1]];
        let mut powers = [vec![1u64; n + 1], vec![1u64; n + 1]];
        for k in 0..2 {
            for (i, &s) in symbols.iter().enumerate() {
                let h = mul_mod(prefix[k][i], BASES[k]) + s as u64 + 1;
                prefix[k][i + 1] = if h >= MODULUS { h - MODULUS } else { h };
                powers[k][i + 1] = mul_mod(powers[k][i], BASES[k]);
            }
        }
        Self {
            symbols,
            prefix,
            powers,
        }
    }

    #[inline]
    fn window(&self, k: usize, start: usize, len: usize) -> u64 {
        let sub = mul_mod(self.prefix[k][start], self.powers[k][len]);
        let h = self.prefix[k][start + len];
        if h >= sub {
            h - sub
        } else {
            h + MODULUS - sub
        }
    }

    fn classify(&self, len: usize, starts: &[usize]) -> Vec<(usize, usize)> {
        let mut buckets: HashMap<(u64, u64), Vec<usize>> = HashMap::with_capacity(starts.len());
        let mut out = Vec::with_capacity(starts.len());
        for &s in starts {
            let key = (self.window(0, s, len), self.window(1, s, len));
            let bucket = buckets.entry(key).or_default();
            let window = &self.symbols[s..s + len];
            let rep = bucket
                .iter()
                .copied()
                .find(|&r| &self.symbols[r..r + len] == window);
            match rep {
                Some(r) => out.push((s, r)),
                None => {
                    bucket.push(s);
                    out.push((s, s));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SuffixIndex<'a> {
    symbols: &'a [u8],
    sa: Vec<usize>,
    /// `lcp[k]` = longest common prefix of suffixes `sa[k-1]` and `sa[k]`; `lcp[0] = 0`.
    lcp: Vec<usize>,
}

impl<'a> SuffixIndex<'a> {
    pub fn new(symbols: &'a [u8]) -> Self {
        let sa = suffix_array(symbols);
        let lcp = lcp_array(symbols, &sa);
        Self { symbols, sa, lcp }
    }

    pub fn suffix_array(&self) -> &[usize] {
        &self.sa
    }

    fn classify(&self, len: usize, starts: &[usize]) -> Vec<(usize, usize)> {
        let n = self.symbols.len();
        let mut is_candidate = vec![false; n + 1];
        for &s in starts {
            is_candidate[s] = true;
        }
        let mut rep_of = vec![usize::MAX; n + 1];
        let mut group: Vec<usize> = Vec::new();
        let flush = |group: &mut Vec<usize>, rep_of: &mut Vec<usize>| {
            if let Some(&min) = group.iter().min() {
                for &g in group.iter() {
                    rep_of[g] = min;
                }
            }
            group.clear();
        };
        for (k, &s) in self.sa.iter().enumerate() {
            if k == 0 || self.lcp[k] < len {
                flush(&mut group, &mut rep_of);
            }
            if is_candidate[s] && s + len <= n {
                group.push(s);
            }
        }
        flush(&mut group, &mut rep_of);
        if len == 0 {
            // every candidate is the empty word
            let first = starts.first().copied().unwrap_or(0);
            return starts.iter().map(|&s| (s, first)).collect();
        }
        starts.iter().map(|&s| (s, rep_of[s])).collect()
    }
}

/// Prefix-doubling suffix array, O(n log^2 n).
pub fn suffix_array(s: &[u8]) -> Vec<usize> {
    let n = s.len();
    let mut sa: Vec<usize> = (0..n).collect();
    if n < 2 {
        return sa;
    }
    let mut rank: Vec<usize> = s.iter().map(|&c| c as usize).collect();
    let mut tmp = vec![0usize; n];
    let mut k = 1;
    loop {
        let key = |i: usize| (rank[i], if i + k < n { rank[i + k] + 1 } else { 0 });
        sa.sort_unstable_by_key(|&i| key(i));
        tmp[sa[0]] = 0;
        for w in 1..n {
            tmp[sa[w]] = tmp[sa[w - 1]] + usize::from(key(sa[w - 1]) < key(sa[w]));
        }
        std::mem::swap(&mut rank, &mut tmp);
        if rank[sa[n - 1]] == n - 1 {
            break;
        }
        k *= 2;
    }
    sa
}

/// Kasai's LCP construction.
pub fn lcp_array(s: &[u8], sa: &[usize]) -> Vec<usize> {
    let n = s.len();
    let mut rank = vec![0usize; n];
    for (i, &p) in sa.iter().enumerate() {
        rank[p] = i;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for i in 0..n {
        if rank[i] > 0 {
            let j = sa[rank[i] - 1];
            while i + h < n && j + h < n && s[i + h] == s[j + h] {
                h += 1;
            }
            lcp[rank[i]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}
