use num_rational::Ratio;

use crate::error::{Error, Result};

use super::dedup::{DedupEngine, FactorId, FactorIndex};
use super::parikh::PrefixParikhTable;
use super::word::Word;

/// Exact exponent `|w| / period`.
pub type Exponent = Ratio<u64>;

/// Whether `w` is an abelian `k`-power: `|w|` divisible by `k` and all `k`
/// consecutive blocks share one Parikh vector. The empty word is never one.
pub fn is_abelian_k_power(w: &Word, k: usize) -> Result<bool> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!(
            "abelian power order must be at least 2, got {k}"
        )));
    }
    Ok(is_abelian_power_slice(w.symbols(), w.sigma(), k))
}

pub(crate) fn is_abelian_power_slice(symbols: &[u8], sigma: usize, k: usize) -> bool {
    let n = symbols.len();
    if n == 0 || n % k != 0 {
        return false;
    }
    let block = n / k;
    let mut first = vec![0usize; sigma];
    for &s in &symbols[..block] {
        first[s as usize] += 1;
    }
    symbols.chunks(block).skip(1).all(|chunk| {
        let mut c = vec![0usize; sigma];
        for &s in chunk {
            c[s as usize] += 1;
        }
        c == first
    })
}

pub fn is_abelian_square(w: &Word) -> bool {
    is_abelian_power_slice(w.symbols(), w.sigma(), 2)
}

fn require_binary(w: &Word) -> Result<()> {
    if w.sigma() != 2 {
        return Err(Error::NotBinary(w.sigma()));
    }
    Ok(())
}

/// Balancedness: for every length, the number of `a`s over all factors of that
/// length varies by at most one.
pub fn is_balanced(w: &Word) -> Result<bool> {
    require_binary(w)?;
    Ok(is_balanced_slice(w.symbols()))
}

pub(crate) fn is_balanced_slice(symbols: &[u8]) -> bool {
    let n = symbols.len();
    let table = PrefixParikhTable::from_symbols(symbols, 2);
    (1..n).all(|m| {
        let (mut lo, mut hi) = (u32::MAX, 0u32);
        for i in 0..=n - m {
            let a = table.count(0, i, m);
            lo = lo.min(a);
            hi = hi.max(a);
            if hi - lo > 1 {
                return false;
            }
        }
        true
    })
}

/// KMP failure function: `border[i]` is the longest proper border of `s[..i]`.
fn borders(s: &[u8]) -> Vec<usize> {
    let mut b = vec![0usize; s.len() + 1];
    let mut k = 0;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = b[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        b[i + 1] = k;
    }
    b
}

/// Smallest period of a nonempty word and its exponent `|w| / p`.
pub fn period_and_exponent(w: &Word) -> Result<(usize, Exponent)> {
    if w.is_empty() {
        return Err(Error::InvalidArgument(
            "period of the empty word is undefined".into(),
        ));
    }
    let n = w.len();
    let p = n - borders(w.symbols())[n];
    Ok((p, Ratio::new(n as u64, p as u64)))
}

/// Largest exponent of a nonempty factor of `w`.
pub fn max_power_order(w: &Word) -> Result<Exponent> {
    if w.is_empty() {
        return Err(Error::InvalidArgument(
            "max power order of the empty word is undefined".into(),
        ));
    }
    let s = w.symbols();
    let mut best = Ratio::from_integer(1u64);
    for i in 0..s.len() {
        let b = borders(&s[i..]);
        for len in 1..b.len() {
            let e = Ratio::new(len as u64, (len - b[len]) as u64);
            if e > best {
                best = e;
            }
        }
    }
    Ok(best)
}

/// Distinct factors of length `m` (`p_w(m)` is the length of the result).
pub fn distinct_factors(w: &Word, m: usize) -> Result<Vec<FactorId>> {
    distinct_factors_with(w, m, DedupEngine::default())
}

pub fn distinct_factors_with(w: &Word, m: usize, engine: DedupEngine) -> Result<Vec<FactorId>> {
    let n = w.len();
    if m > n {
        return Err(Error::OutOfRange {
            start: 0,
            end: m,
            len: n,
        });
    }
    let starts: Vec<usize> = (0..=n - m).collect();
    Ok(FactorIndex::build(w.symbols(), engine).distinct(m, &starts))
}

/// Distinct length-`m` factors `u` such that `u` is followed by at least two
/// different letters somewhere in `w`.
pub fn right_special_factors(w: &Word, m: usize) -> Result<Vec<FactorId>> {
    let n = w.len();
    if m >= n {
        return Err(Error::OutOfRange {
            start: 0,
            end: m + 1,
            len: n,
        });
    }
    let index = FactorIndex::build(w.symbols(), DedupEngine::default());
    Ok(right_special_with_index(&index, w.symbols(), m))
}

pub(crate) fn right_special_with_index(
    index: &FactorIndex<'_>,
    symbols: &[u8],
    m: usize,
) -> Vec<FactorId> {
    let n = symbols.len();
    let starts: Vec<usize> = (0..n - m).collect();
    let mut followers: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
    for (s, rep) in index.classify(m, &starts) {
        *followers.entry(rep).or_default() |= 1u64 << (symbols[s + m] % 64);
    }
    followers
        .into_iter()
        .filter(|(_, mask)| mask.count_ones() >= 2)
        .map(|(start, _)| FactorId { start, len: m })
        .collect()
}
