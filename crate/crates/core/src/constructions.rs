//! Explicit words with many abelian squares: `a^n b a^n b a^n` and the layered word
//! `w_1 = aabaabaab`, `w_k = w_{k-1} (a^{2^k} b)^3`.

use rayon::prelude::*;
use serde::Serialize;

use crate::count::{spectrum, PrefixSource};
use crate::error::{Error, Result};
use crate::words::{distinct_factors, right_special_factors, Alphabet, Word};

const A: u8 = 0;
const B: u8 = 1;

/// `a^n b a^n b a^n`.
pub fn triple_block(n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::InvalidArgument("triple block needs n >= 1".into()));
    }
    let mut s = Vec::with_capacity(3 * n + 2);
    for k in 0..3 {
        s.extend(std::iter::repeat(A).take(n));
        if k < 2 {
            s.push(B);
        }
    }
    Word::new(Alphabet::binary(), s)
}

/// Pairs `(i, j)` in `[0, n]^2` with `i + j + n` even: each gives the abelian square `a^i b a^n b a^j`.
pub fn triple_block_family_size(n: usize) -> u64 {
    let mut count = 0;
    for i in 0..=n {
        for j in 0..=n {
            count += ((i + j + n) % 2 == 0) as u64;
        }
    }
    count
}

/// `|w_k|`: `9` for `k = 1`, then `|w_{k-1}| + 3 * 2^k + 3`.
pub fn layered_block_len(k: u32) -> usize {
    (1..=k).map(|j| 3 * (1usize << j) + 3).sum()
}

/// First `len` letters of the layered word.
pub fn layered_prefix(len: usize) -> Result<Word> {
    if len == 0 {
        return Err(Error::InvalidArgument("layered prefix needs L >= 1".into()));
    }
    let mut s = Vec::with_capacity(len + 64);
    let mut k = 1u32;
    while s.len() < len {
        for _ in 0..3 {
            s.extend(std::iter::repeat(A).take(1 << k));
            s.push(B);
        }
        k += 1;
    }
    s.truncate(len);
    Word::new(Alphabet::binary(), s)
}

pub struct LayeredSource;

impl PrefixSource for LayeredSource {
    fn name(&self) -> String {
        "layered".into()
    }

    fn prefix(&self, len: usize) -> Result<Word> {
        layered_prefix(len.max(1))
    }
}

/// Prefix `w_k` long enough that every factor of length `m` of the infinite word already occurs:
/// `2^k >= m`, plus one more layer.
pub fn layered_stable_prefix(m: usize) -> Result<Word> {
    let k = (1..).find(|&k| (1usize << k) >= m.max(2)).unwrap() + 1;
    layered_prefix(layered_block_len(k))
}

/// `a^n`, `a^i b a^j`, `a^i b a^j b a^j` or `a^i b a^j b a^j b a^j`, with `j` a power of two.
pub fn matches_layered_template(u: &[u8]) -> bool {
    let runs: Vec<usize> = u.split(|&c| c == B).map(<[u8]>::len).collect();
    match runs.len() {
        1 => true,
        2..=4 => {
            let j = runs[1];
            j.is_power_of_two() && runs[1..].iter().all(|&r| r == j)
        }
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RightSpecialRow {
    pub m: usize,
    pub factors: Vec<String>,
    pub templates_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PerFactorRow {
    pub n: usize,
    /// Block exponent `2^k` of the pattern `a^{2^k} b a^{2^k} b a^{2^k}`.
    pub block: usize,
    pub factors_with_pattern: usize,
    pub sampled: usize,
    pub min_total: u64,
    /// `min_total / n^2`.
    pub min_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LadderRow {
    pub n: usize,
    pub factors: usize,
    pub mean_ratio: f64,
    pub min_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LayeredChecks {
    pub m_max: usize,
    pub prefix_len: usize,
    pub right_special: Vec<RightSpecialRow>,
    /// Every length has at most four right special factors.
    pub at_most_four: bool,
    pub templates_ok: bool,
    /// `k` such that `a^{2^k}` occurs in `w_6`.
    pub power_witnesses: Vec<u32>,
    /// Mean and minimum per-factor totals over all length-`n` factors.
    pub ladder: Vec<LadderRow>,
    pub per_factor: Vec<PerFactorRow>,
}

fn contains(hay: &[u8], needle: &[u8]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

fn pattern(block: usize) -> Vec<u8> {
    let mut p = Vec::new();
    for k in 0..3 {
        p.extend(std::iter::repeat(A).take(block));
        if k < 2 {
            p.push(B);
        }
    }
    p
}

/// Right special factors up to length `m_max`, their shapes, power witnesses, and per-factor totals.
///
/// `ladder` lists lengths for the mean/minimum totals over every factor; `per_factor_lengths`
/// lists lengths `n` where up to `samples` factors containing `a^{2^k} b a^{2^k} b a^{2^k}`
/// with `2^k` near `n / 100` are measured.
pub fn layered_structure_checks(
    m_max: usize,
    ladder: &[usize],
    per_factor_lengths: &[usize],
    samples: usize,
) -> Result<LayeredChecks> {
    let word = layered_stable_prefix(m_max + 1)?;
    let check = layered_stable_prefix(2 * (m_max + 1))?;
    let mut right_special = Vec::new();
    for m in 1..=m_max {
        let strings = |w: &Word| -> Result<Vec<String>> {
            let mut v: Vec<String> = right_special_factors(w, m)?
                .into_iter()
                .map(|id| w.factor_of(id).map(|f| f.to_string()))
                .collect::<Result<_>>()?;
            v.sort();
            Ok(v)
        };
        let factors = strings(&word)?;
        if factors != strings(&check)? {
            return Err(Error::NonStabilized {
                cap: check.len(),
                last_prefix: word.len(),
            });
        }
        let templates_ok = factors.iter().all(|f| {
            let s: Vec<u8> = f.bytes().map(|c| if c == b'a' { A } else { B }).collect();
            matches_layered_template(&s)
        });
        right_special.push(RightSpecialRow {
            m,
            factors,
            templates_ok,
        });
    }
    let at_most_four = right_special.iter().all(|r| r.factors.len() <= 4);
    let templates_ok = right_special.iter().all(|r| r.templates_ok);

    let w6 = layered_prefix(layered_block_len(6))?;
    let power_witnesses = (0..=6u32)
        .filter(|&k| contains(w6.symbols(), &vec![A; 1 << k]))
        .collect();

    let ladder = ladder
        .iter()
        .map(|&n| {
            let w = layered_stable_prefix(n)?;
            let ids = distinct_factors(&w, n)?;
            let totals: Vec<u64> = ids
                .par_iter()
                .map(|id| spectrum(&w.factor_of(*id).expect("factor in range")).total)
                .collect();
            let nn = (n * n) as f64;
            let mean = totals.iter().sum::<u64>() as f64 / totals.len() as f64;
            Ok(LadderRow {
                n,
                factors: totals.len(),
                mean_ratio: mean / nn,
                min_ratio: *totals.iter().min().unwrap_or(&0) as f64 / nn,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let per_factor = per_factor_lengths
        .iter()
        .map(|&n| {
            let block = (n / 100).max(1).next_power_of_two();
            let pat = pattern(block);
            let w = layered_stable_prefix(n)?;
            let ids = distinct_factors(&w, n)?;
            let hits: Vec<_> = ids
                .into_iter()
                .filter(|id| contains(&w.symbols()[id.start..id.start + n], &pat))
                .collect();
            let step = (hits.len() / samples.max(1)).max(1);
            let chosen: Vec<_> = hits.iter().step_by(step).take(samples.max(1)).collect();
            let totals: Vec<u64> = chosen
                .par_iter()
                .map(|id| spectrum(&w.factor_of(**id).expect("factor in range")).total)
                .collect();
            let min_total = totals.iter().copied().min().unwrap_or(0);
            Ok(PerFactorRow {
                n,
                block,
                factors_with_pattern: hits.len(),
                sampled: totals.len(),
                min_total,
                min_ratio: min_total as f64 / (n * n) as f64,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(LayeredChecks {
        m_max,
        prefix_len: word.len(),
        right_special,
        at_most_four,
        templates_ok,
        power_witnesses,
        ladder,
        per_factor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_abelian_square;

    #[test]
    fn triple_block_examples() {
        let w = triple_block(1).unwrap();
        assert_eq!(w.to_string(), "ababa");
        assert_eq!(spectrum(&w).total, 2);
        assert_eq!(triple_block(2).unwrap().to_string(), "aabaabaa");
        assert!(triple_block(0).is_err());
    }

    #[test]
    fn family_members_are_abelian_squares() {
        for n in 1..=8usize {
            for i in 0..=n {
                for j in 0..=n {
                    let s = format!("{}b{}b{}", "a".repeat(i), "a".repeat(n), "a".repeat(j));
                    let u = Word::from_letters(&s).unwrap();
                    assert_eq!(is_abelian_square(&u), (i + j + n) % 2 == 0, "{s}");
                }
            }
        }
        for n in 1..=32 {
            assert!(spectrum(&triple_block(n).unwrap()).total >= triple_block_family_size(n));
        }
    }

    #[test]
    fn triple_block_quadratic() {
        for n in [8, 16, 32, 64] {
            let t = spectrum(&triple_block(n).unwrap()).total as f64;
            let len = (3 * n + 2) as f64;
            assert!(t / (len * len) > 0.02, "n = {n}: {}", t / (len * len));
        }
    }

    #[test]
    fn layered_prefixes() {
        assert_eq!(layered_prefix(9).unwrap().to_string(), "aabaabaab");
        assert_eq!(
            layered_prefix(24).unwrap().to_string(),
            "aabaabaabaaaabaaaabaaaab"
        );
        assert_eq!(layered_block_len(1), 9);
        for k in 2..=6 {
            assert_eq!(
                layered_block_len(k),
                layered_block_len(k - 1) + 3 * (1 << k) + 3
            );
            let wk = layered_prefix(layered_block_len(k)).unwrap();
            let prev = layered_prefix(layered_block_len(k - 1)).unwrap();
            assert_eq!(&wk.symbols()[..prev.len()], prev.symbols());
        }
        assert!(layered_prefix(0).is_err());
    }

    #[test]
    fn templates() {
        let t = |s: &str| {
            matches_layered_template(
                &s.bytes()
                    .map(|c| if c == b'a' { A } else { B })
                    .collect::<Vec<_>>(),
            )
        };
        assert!(t("aaaa"));
        assert!(t("aaabaa"));
        assert!(t("abaaaabaaaa"));
        assert!(!t("abaaa"));
        assert!(!t("abaabaaaa"));
        assert!(!t("babababab"));
    }

    #[test]
    fn structure_up_to_sixteen() {
        let c = layered_structure_checks(16, &[16, 32], &[], 0).unwrap();
        assert!(c.at_most_four);
        assert!(c.templates_ok, "{:?}", c.right_special);
        assert_eq!(c.power_witnesses, (0..=6).collect::<Vec<_>>());
        assert!(c.ladder[1].mean_ratio > 0.0);
    }
}
