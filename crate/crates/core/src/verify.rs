//! Invariant suites run by `abelsq verify`. Each check reports pass/fail and,
//! on failure, the first counterexample found.

use std::collections::{BTreeMap, HashSet};
use std::str::FromStr;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{
    layered_block_len, layered_prefix, layered_structure_checks, triple_block,
    triple_block_family_size,
};
use crate::count::{
    inequivalent_spectrum, spectrum, spectrum_up_to, stabilize, SquareSpectrum, StabilityConfig,
};
use crate::error::{Error, Result};
use crate::sturmian::{
    discrepancy, interval_partition, sturmian_as_count, sturmian_prefix, CertifiedReal,
    ContinuedFraction, LinearForm, SturmianSource, SturmianSpec, Weight,
};
use crate::thue_morse::{
    defect, mu_squared, tm_closed_form_arguments, tm_complexity, tm_f_bruteforce_table,
    tm_f_closed_forms, tm_f_linear_rep, tm_f_linear_rep_range, tm_f_recurrence_range, tm_faa_fab,
    tm_prefix, tm_recurrence_system, TM_F_TABLE,
};
use crate::words::{
    distinct_factors_with, is_abelian_k_power, is_balanced, max_power_order, parikh,
    period_and_exponent, Alphabet, DedupEngine, PrefixParikhTable, Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WordsCore,
    AbelianCount,
    ThueMorse,
    Sturmian,
    Constructions,
    LemmaBal,
    PowerBound,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::WordsCore,
        Suite::AbelianCount,
        Suite::ThueMorse,
        Suite::Sturmian,
        Suite::Constructions,
        Suite::LemmaBal,
        Suite::PowerBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::WordsCore => "words-core",
            Suite::AbelianCount => "abelian-count",
            Suite::ThueMorse => "thue-morse",
            Suite::Sturmian => "sturmian",
            Suite::Constructions => "constructions",
            Suite::LemmaBal => "lemma-bal",
            Suite::PowerBound => "power-bound",
        }
    }
}

/// Parses a suite name; `all` expands to every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    if s == "all" {
        return Ok(Suite::ALL.to_vec());
    }
    Suite::ALL
        .into_iter()
        .find(|x| x.name() == s)
        .map(|x| vec![x])
        .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    /// Scope of the check on success, first counterexample on failure.
    pub detail: String,
}

/// Size knobs. `None` picks the suite default.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyConfig {
    pub max_len: Option<usize>,
    pub n_max: Option<usize>,
    pub seed: u64,
}

struct Checks {
    suite: &'static str,
    out: Vec<Check>,
}

impl Checks {
    fn new(suite: Suite) -> Self {
        Self {
            suite: suite.name(),
            out: Vec::new(),
        }
    }

    /// `first_failure` is `None` on success.
    fn record(&mut self, name: &str, scope: String, first_failure: Option<String>) {
        let passed = first_failure.is_none();
        self.out.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            detail: first_failure.unwrap_or(scope),
        });
    }

    fn record_result(&mut self, name: &str, scope: String, r: Result<Option<String>>) {
        match r {
            Ok(f) => self.record(name, scope, f),
            Err(e) => self.record(name, scope, Some(format!("error: {e}"))),
        }
    }
}

/// Every word of length `n` over `sigma` letters, in lexicographic order.
pub fn all_words(n: usize, sigma: usize) -> impl Iterator<Item = Vec<u8>> {
    let total = (sigma as u64).pow(n as u32);
    (0..total).map(move |mut x| {
        let mut v = vec![0u8; n];
        for slot in v.iter_mut().rev() {
            *slot = (x % sigma as u64) as u8;
            x /= sigma as u64;
        }
        v
    })
}

fn word(symbols: Vec<u8>, sigma: usize) -> Word {
    Word::new(Alphabet::with_size(sigma).expect("sigma >= 1"), symbols).expect("symbols in range")
}

/// Abelian-square counts per length by testing every factor and deduplicating strings.
pub fn naive_spectrum(w: &Word) -> BTreeMap<usize, u64> {
    let s = w.symbols();
    let mut out = BTreeMap::new();
    for m in (2..=s.len()).step_by(2) {
        let mut seen = HashSet::new();
        for f in s.windows(m) {
            let h = m / 2;
            let mut d = [0i32; 8];
            for (&x, &y) in f[..h].iter().zip(&f[h..]) {
                d[x as usize] += 1;
                d[y as usize] -= 1;
            }
            if d.iter().all(|&v| v == 0) {
                seen.insert(f.to_vec());
            }
        }
        if !seen.is_empty() {
            out.insert(m, seen.len() as u64);
        }
    }
    out
}

fn first<T: Send>(
    items: impl IntoParallelIterator<Item = T>,
    bad: impl Fn(T) -> Option<String> + Sync + Send,
) -> Option<String> {
    items.into_par_iter().filter_map(bad).min()
}

fn words_core(cfg: &VerifyConfig) -> Vec<Check> {
    let mut c = Checks::new(Suite::WordsCore);
    let max_len = cfg.max_len.unwrap_or(12);

    let dedup = first(
        (1..=max_len)
            .into_par_iter()
            .flat_map_iter(|n| all_words(n, 2).map(|v| (v, 2)))
            .chain(
                (1..=7usize)
                    .into_par_iter()
                    .flat_map_iter(|n| all_words(n, 3).map(|v| (v, 3))),
            ),
        |(v, sigma)| {
            let w = word(v, sigma);
            for m in 1..=w.len() {
                let naive: HashSet<&[u8]> = w.symbols().windows(m).collect();
                for engine in [DedupEngine::RollingHash, DedupEngine::SuffixArray] {
                    let ids = distinct_factors_with(&w, m, engine).ok()?;
                    let got: HashSet<&[u8]> = ids
                        .iter()
                        .map(|id| &w.symbols()[id.start..id.start + m])
                        .collect();
                    if ids.len() != naive.len() || got != naive {
                        return Some(format!(
                            "{w} m={m} engine={engine:?}: {} vs {}",
                            ids.len(),
                            naive.len()
                        ));
                    }
                }
            }
            None
        },
    );
    c.record(
        "dedup equals naive string sets",
        format!("binary words of length <= {max_len}, ternary <= 7, both engines"),
        dedup,
    );

    let parikh_sums = first(
        (1..=10usize)
            .into_par_iter()
            .flat_map_iter(|n| all_words(n, 3)),
        |v| {
            let w = word(v, 3);
            let t = PrefixParikhTable::new(&w);
            for i in 0..w.len() {
                for m in 0..=w.len() - i {
                    let p = t.factor_parikh(i, m).ok()?;
                    if p.total() != m {
                        return Some(format!("{w} i={i} m={m}"));
                    }
                }
            }
            None
        },
    );
    c.record(
        "factor Parikh vectors sum to length",
        "ternary words of length <= 10".into(),
        parikh_sums,
    );

    let invariance = first(
        (1..=10usize)
            .into_par_iter()
            .flat_map_iter(|n| all_words(n, 2)),
        |v| {
            let w = word(v, 2);
            let r = w.reversed();
            let p = w.permuted(&[1, 0]).ok()?;
            for k in 2..=4 {
                let a = is_abelian_k_power(&w, k).ok()?;
                if a != is_abelian_k_power(&r, k).ok()? || a != is_abelian_k_power(&p, k).ok()? {
                    return Some(format!("{w} k={k}"));
                }
            }
            None
        },
    );
    c.record(
        "abelian powers invariant under reversal and letter swap",
        "binary words of length <= 10, k <= 4".into(),
        invariance,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let samples: Vec<Vec<u8>> = (0..2000)
        .map(|_| {
            let n = rng.gen_range(1..=64);
            let p = rng.gen_range(1..=n);
            let base: Vec<u8> = (0..p).map(|_| rng.gen_range(0..2)).collect();
            (0..n).map(|i| base[i % p]).collect()
        })
        .collect();
    let period = first(samples, |v| {
        let w = word(v, 2);
        let s = w.symbols();
        let naive = (1..=s.len())
            .find(|&p| (p..s.len()).all(|i| s[i] == s[i - p]))
            .unwrap();
        let (p, e) = period_and_exponent(&w).ok()?;
        let prefix_of_power = (0..s.len()).all(|i| s[i] == s[i % p]);
        (p != naive || !prefix_of_power || *e.numer() * p as u64 != s.len() as u64 * *e.denom())
            .then(|| format!("{w}: period {p}, naive {naive}"))
    });
    c.record(
        "minimal period matches naive scan",
        format!("2000 periodic words of length <= 64, seed {}", cfg.seed),
        period,
    );
    c.out
}

fn abelian_count(cfg: &VerifyConfig) -> Vec<Check> {
    let mut c = Checks::new(Suite::AbelianCount);
    let max_len = cfg.max_len.unwrap_or(12);
    let oracle = first(
        (1..=max_len)
            .into_par_iter()
            .flat_map_iter(|n| all_words(n, 2)),
        |v| {
            let w = word(v, 2);
            let naive = naive_spectrum(&w);
            let fast = spectrum(&w);
            let sa = spectrum_up_to(&w, w.len(), DedupEngine::SuffixArray);
            (fast.counts != naive
                || sa.counts != naive
                || fast.total != naive.values().sum::<u64>())
            .then(|| format!("{w}: {:?} vs naive {naive:?}", fast.counts))
        },
    );
    c.record(
        "spectrum equals naive enumeration",
        format!("all binary words of length <= {max_len}"),
        oracle,
    );

    let mono = first(
        (2..=10usize)
            .into_par_iter()
            .flat_map_iter(|n| all_words(n, 2)),
        |v| {
            let w = word(v, 2);
            let full = spectrum(&w);
            let pre = spectrum(&w.prefix(w.len() - 1).ok()?);
            pre.counts
                .iter()
                .find(|(m, c)| **c > full.at(**m))
                .map(|(m, _)| format!("{w} m={m}"))
        },
    );
    c.record(
        "prefix counts never exceed word counts",
        "binary words of length <= 10".into(),
        mono,
    );

    let ineq = first(
        (1..=10usize)
            .into_par_iter()
            .flat_map_iter(|n| all_words(n, 3)),
        |v| {
            let w = word(v, 3);
            let d = spectrum(&w);
            let i = inequivalent_spectrum(&w);
            i.counts
                .iter()
                .find(|(m, c)| **c > d.at(**m))
                .map(|(m, _)| format!("{w} m={m}"))
        },
    );
    c.record(
        "inequivalent counts at most distinct counts",
        "ternary words of length <= 10".into(),
        ineq,
    );
    c.out
}

fn thue_morse(cfg: &VerifyConfig) -> Vec<Check> {
    let mut c = Checks::new(Suite::ThueMorse);
    let n_brute = cfg.n_max.unwrap_or(64);
    c.record_result(
        "brute force, matrix and recurrence agree",
        format!("1 <= n <= {n_brute}"),
        (|| {
            let (brute, cert) = tm_f_bruteforce_table(n_brute, StabilityConfig::default())?;
            let lin = tm_f_linear_rep_range(n_brute as u64)?;
            let rec = tm_f_recurrence_range(n_brute as u64)?;
            if brute[..20] != TM_F_TABLE {
                return Ok(Some(format!(
                    "brute force table differs from the reference values: {:?}",
                    &brute[..20]
                )));
            }
            Ok((0..n_brute)
                .find(|&i| BigInt::from(brute[i]) != lin[i] || lin[i] != rec[i])
                .map(|i| {
                    format!(
                        "n={}: brute {} matrix {} recurrence {} (prefix {})",
                        i + 1,
                        brute[i],
                        lin[i],
                        rec[i],
                        cert.prefix_len
                    )
                }))
        })(),
    );
    c.record_result(
        "matrix and recurrence agree",
        "1 <= n <= 10000".into(),
        (|| {
            let lin = tm_f_linear_rep_range(10_000)?;
            let rec = tm_f_recurrence_range(10_000)?;
            Ok((0..lin.len())
                .find(|&i| lin[i] != rec[i])
                .map(|i| format!("n={}: {} vs {}", i + 1, lin[i], rec[i])))
        })(),
    );
    c.record_result(
        "recurrence rules validated",
        "every rule checked on 20 instances".into(),
        (|| {
            let v = tm_recurrence_system()?;
            Ok((!v.report.trusted()).then(|| format!("{:?}", v.report)))
        })(),
    );
    c.record_result(
        "closed forms",
        "1 <= k <= 8".into(),
        (|| {
            for k in 1..=8u32 {
                let (a, b) = tm_closed_form_arguments(k);
                let (fa, fb) = tm_f_closed_forms(k)?;
                if fa != tm_f_linear_rep(a)? || fb != tm_f_linear_rep(b)? {
                    return Ok(Some(format!("k={k}")));
                }
            }
            Ok(None)
        })(),
    );
    let parity = (1..=10_000u64).find(|&n| {
        let d = defect(n).twice;
        (n % 2 == 0) != (d == 0) || (n % 2 == 1 && d.abs() != 1)
    });
    c.record(
        "defect vanishes exactly at even lengths",
        "1 <= n <= 10000".into(),
        parity.map(|n| format!("n={n}")),
    );
    let order = max_power_order(&tm_prefix(1 << 12))
        .map(|e| (e > 2u64.into()).then(|| format!("exponent {e}")));
    c.record_result(
        "prefix of length 4096 is overlap-free",
        "largest factor exponent <= 2".into(),
        order,
    );
    let lemma = first(2..=200usize, |n| {
        let p = tm_complexity(n).ok()?;
        let (aa, ab) = tm_faa_fab(n).ok()?;
        (3 * aa < p || 3 * ab < p || aa + 1 < n || ab + 1 < n)
            .then(|| format!("n={n}: p={p} aa={aa} ab={ab}"))
    });
    c.record(
        "endpoint-class counts bounded below",
        "2 <= n <= 200: f_aa, f_ab >= p(n)/3 and >= n-1".into(),
        lemma,
    );
    c.record_result(
        "squared-morphism images are abelian squares",
        "factors of even length <= 40 with equal end letters".into(),
        (|| {
            let base = tm_prefix(4096);
            let image = mu_squared(&base);
            let hay = image.symbols();
            for n in (2..=40).step_by(2) {
                for id in distinct_factors_with(&base, n, DedupEngine::default())? {
                    let u = base.factor_of(id)?;
                    if u.symbols()[0] != u.symbols()[n - 1] {
                        continue;
                    }
                    let img = mu_squared(&u);
                    let trimmed = img.factor(1, img.len() - 2)?;
                    for v in [&img, &trimmed] {
                        let occurs = hay.windows(v.len()).any(|w| w == v.symbols());
                        if !is_abelian_k_power(v, 2)? || !occurs {
                            return Ok(Some(format!("u={u}")));
                        }
                    }
                }
            }
            Ok(None)
        })(),
    );
    c.out
}

fn three_alphas() -> Vec<ContinuedFraction> {
    vec![
        ContinuedFraction::golden(),
        ContinuedFraction::silver(),
        ContinuedFraction::periodic(0, vec![], vec![1, 2]).expect("nonempty period"),
    ]
}

fn sturmian(cfg: &VerifyConfig) -> Vec<Check> {
    let mut c = Checks::new(Suite::Sturmian);
    let n_max = cfg.n_max.unwrap_or(60);
    let golden = CertifiedReal::new(ContinuedFraction::golden());
    let table2 = [
        1u64, 3, 5, 1, 9, 5, 5, 15, 3, 13, 13, 5, 25, 9, 15, 25, 1, 27,
    ];
    c.record_result(
        "Fibonacci counts at even n <= 36",
        "interval formula".into(),
        (|| {
            for (h, &e) in table2.iter().enumerate() {
                let got = sturmian_as_count(&golden, 2 * (h + 1))?;
                if got != e {
                    return Ok(Some(format!("n={}: {got} vs {e}", 2 * (h + 1))));
                }
            }
            Ok(None)
        })(),
    );
    for cf in three_alphas() {
        let alpha = CertifiedReal::new(cf.clone());
        c.record_result(
            &format!("formula equals word counting, α={cf}"),
            format!("even n <= {n_max}"),
            (|| {
                let spec = SturmianSpec::characteristic(cf.clone())?;
                let source = SturmianSource { spec };
                let (counts, _) = stabilize(&source, n_max, StabilityConfig::default(), |w| {
                    spectrum_up_to(w, n_max, DedupEngine::default()).counts
                })?;
                let words = SquareSpectrum::from_counts(0, counts);
                for n in (2..=n_max).step_by(2) {
                    let f = sturmian_as_count(&alpha, n)?;
                    if f != words.at(n) {
                        return Ok(Some(format!("n={n}: formula {f}, words {}", words.at(n))));
                    }
                }
                Ok(None)
            })(),
        );
        c.record_result(&format!("interval partitions, α={cf}"), format!("1 <= n <= {n_max}: n+1 tiles, distinct factors, tags match Parikh"), (|| {
            for n in 1..=n_max {
                let p = interval_partition(&alpha, n)?;
                let iv = &p.intervals;
                let tiles = iv.len() == n + 1
                    && iv[0].lo == LinearForm::integer(0)
                    && iv[n].hi == LinearForm::integer(1)
                    && iv.windows(2).all(|w| w[0].hi == w[1].lo);
                let distinct = iv.iter().map(|x| &x.factor).collect::<HashSet<_>>().len() == n + 1;
                let light_a = alpha.floor_multiple(n as i128)? as usize;
                let tags = iv.iter().all(|x| x.a_count == light_a + usize::from(x.weight == Weight::Heavy));
                let square_parity = iv.iter().all(|x| {
                    let w = Word::from_letters(&x.factor).expect("a/b factor");
                    is_abelian_k_power(&w, 2).expect("binary") == (n % 2 == 0 && x.a_count % 2 == 0)
                });
                if !(tiles && distinct && tags && square_parity) {
                    return Ok(Some(format!("n={n}: tiles {tiles} distinct {distinct} tags {tags} parity {square_parity}")));
                }
            }
            Ok(None)
        })());
        c.record_result(
            &format!("prefixes balanced, α={cf}"),
            "prefix of length 500".into(),
            (|| {
                let spec = SturmianSpec::characteristic(cf.clone())?;
                Ok((!is_balanced(&sturmian_prefix(&spec, 500)?)?)
                    .then(|| "unbalanced prefix".to_string()))
            })(),
        );
    }
    c.record_result(
        "discrepancy equals quadratic oracle",
        "golden ratio, N <= 200".into(),
        (|| {
            let a = (5f64.sqrt() - 1.0) / 2.0;
            for n in 1..=200 {
                let d = discrepancy(&golden, n)?;
                let o = float_discrepancy_oracle(a, n);
                if (d.preview - o).abs() > 1e-9 {
                    return Ok(Some(format!("N={n}: {} vs {o}", d.preview)));
                }
            }
            Ok(None)
        })(),
    );
    c.record_result(
        "discrepancy decreases across decades",
        "N = 10, 100, 1000, 10000".into(),
        (|| {
            let ds = [10, 100, 1000, 10_000].map(|n| discrepancy(&golden, n).map(|d| d.preview));
            let ds: Vec<f64> = ds.into_iter().collect::<Result<_>>()?;
            Ok(ds
                .windows(2)
                .any(|w| w[1] >= w[0])
                .then(|| format!("{ds:?}")))
        })(),
    );
    c.out
}

/// Supremum of the window error over windows whose endpoints are sample points or 1.
pub fn float_discrepancy_oracle(alpha: f64, n: usize) -> f64 {
    let mut p: Vec<f64> = (0..=n).map(|k| (k as f64 * alpha).fract()).collect();
    p.sort_by(f64::total_cmp);
    let mut ends = p.clone();
    ends.push(1.0);
    let nf = n as f64;
    let mut best: f64 = 0.0;
    for (a, &x) in ends.iter().enumerate() {
        for (b, &y) in ends.iter().enumerate().skip(a) {
            // p is sorted: points in [x, y] are indices a..=b, in (x, y) are a+1..b
            let closed = (b.min(n) + 1).saturating_sub(a) as f64;
            let open = b.min(n + 1).saturating_sub(a + 1) as f64;
            best = best.max(closed / nf - (y - x)).max((y - x) - open / nf);
        }
    }
    best
}

fn constructions(_cfg: &VerifyConfig) -> Vec<Check> {
    let mut c = Checks::new(Suite::Constructions);
    let triple = first(1..=32usize, |n| {
        let w = triple_block(n).ok()?;
        let b = w.symbols().iter().filter(|&&x| x == 1).count();
        let total = spectrum(&w).total;
        (w.len() != 3 * n + 2 || b != 2 || total < triple_block_family_size(n))
            .then(|| format!("n={n}: total {total}"))
    });
    c.record(
        "triple block contains its abelian-square family",
        "1 <= n <= 32".into(),
        triple,
    );
    c.record_result(
        "layered word lengths and prefixes",
        "k <= 8".into(),
        (|| {
            for k in 2..=8u32 {
                let cur = layered_prefix(layered_block_len(k))?;
                let prev = layered_prefix(layered_block_len(k - 1))?;
                if cur.len() != prev.len() + 3 * (1 << k) + 3
                    || cur.symbols()[..prev.len()] != *prev.symbols()
                {
                    return Ok(Some(format!("k={k}")));
                }
            }
            Ok(None)
        })(),
    );
    c.record_result(
        "layered right special factors",
        "lengths <= 64: at most four, shape templates".into(),
        (|| {
            let r = layered_structure_checks(64, &[64, 128, 256], &[], 0)?;
            let bad = r
                .right_special
                .iter()
                .find(|row| row.factors.len() > 4 || !row.templates_ok);
            let ladder_low = r.ladder.iter().any(|l| l.mean_ratio < 0.01);
            let min_shrinks = r.ladder.windows(2).all(|w| w[1].min_ratio < w[0].min_ratio);
            Ok(if let Some(row) = bad {
                Some(format!("m={}: {:?}", row.m, row.factors))
            } else if ladder_low || !min_shrinks {
                Some(format!("ladder {:?}", r.ladder))
            } else {
                None
            })
        })(),
    );
    c.out
}

/// Every balanced binary word of length `<= max_len`.
pub fn balanced_words(max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut layer = vec![Vec::<u8>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for v in &layer {
            for x in 0..2 {
                let mut u = v.clone();
                u.push(x);
                // balanced words are factorial, so extending balanced words is enough
                if is_balanced(&word(u.clone(), 2)).expect("binary") {
                    next.push(u);
                }
            }
        }
        out.extend(next.iter().cloned().map(|v| word(v, 2)));
        layer = next;
    }
    out
}

fn lemma_bal(cfg: &VerifyConfig) -> Vec<Check> {
    let mut c = Checks::new(Suite::LemmaBal);
    let max_len = cfg.max_len.unwrap_or(16);
    let words = balanced_words(max_len);
    let count = words.len();
    let bad = first(words, |w| {
        let p = parikh(&w);
        for k in 2..=w.len().max(4) {
            let congruent = p.counts().iter().all(|&x| x % k == 0);
            if congruent != is_abelian_k_power(&w, k).ok()? {
                return Some(format!("{w} k={k}"));
            }
        }
        None
    });
    c.record(
        "Parikh vector divisible by k iff abelian k-power",
        format!("{count} balanced words of length <= {max_len}, all k >= 2"),
        bad,
    );
    c.out
}

fn power_bound(cfg: &VerifyConfig) -> Vec<Check> {
    let mut c = Checks::new(Suite::PowerBound);
    let max_len = cfg.max_len.unwrap_or(6);
    let bad = first(
        (1..=max_len)
            .into_par_iter()
            .flat_map_iter(|n| all_words(n, 2)),
        |v| {
            let u = word(v, 2);
            for k in 1..=5 {
                let w = u.power(k);
                let total = spectrum(&w).total as usize;
                if total * k > w.len() * w.len() {
                    return Some(format!("u={u} k={k}: {total}"));
                }
            }
            None
        },
    );
    c.record(
        "powers u^k have at most |u^k|^2/k abelian squares",
        format!("binary |u| <= {max_len}, k <= 5"),
        bad,
    );
    c.out
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<Check> {
    match suite {
        Suite::WordsCore => words_core(cfg),
        Suite::AbelianCount => abelian_count(cfg),
        Suite::ThueMorse => thue_morse(cfg),
        Suite::Sturmian => sturmian(cfg),
        Suite::Constructions => constructions(cfg),
        Suite::LemmaBal => lemma_bal(cfg),
        Suite::PowerBound => power_bound(cfg),
    }
}
