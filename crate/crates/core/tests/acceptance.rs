//! Acceptance criteria. Runs without the libtest harness so that every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion fails.
//!
//! Reference values are either known values listed below or computed by the
//! small independent oracles defined here (plain string sets, no library counting code).

use std::collections::HashSet;
use std::time::{Duration, Instant};

use abelsq::constructions::matches_layered_template;
use abelsq::count::{
    inequivalent_probe, max_as_search, random_word_statistic, spectrum, DEFAULT_SEARCH_BUDGET,
};
use abelsq::sturmian::{
    discrepancy, discrepancy_bound, interval_partition, sturmian_as_count, sturmian_as_counts,
    CertifiedReal, ContinuedFraction, Weight,
};
use abelsq::thue_morse::{
    tm_complexity, tm_f_bruteforce, tm_f_bruteforce_table, tm_f_linear_rep, tm_f_linear_rep_range,
    tm_f_recurrence_range, tm_faa_fab, tm_recurrence_system, RuleStatus,
};
use abelsq::words::{is_abelian_k_power, parikh};
use abelsq::{Alphabet, Word};
use num_bigint::BigInt;

/// Wall-clock limit for criteria 1 and 2.
const TIME_LIMIT: Duration = Duration::from_secs(60);
/// Absolute tolerance between the exact discrepancy and the floating oracle.
const DISCREPANCY_TOL: f64 = 1e-9;
/// Density ratios must stay within this factor of their median.
const DENSITY_FACTOR: f64 = 2.0;
/// Accepted range for the fitted exponent of random binary words.
const RANDOM_EXPONENT: (f64, f64) = (1.3, 1.7);
const RANDOM_SAMPLES: usize = 200;
const RANDOM_SEED: u64 = 20_140_613;

const TM_ORDERS: [u64; 20] = [
    2, 4, 4, 10, 8, 24, 10, 22, 12, 36, 20, 52, 24, 54, 20, 46, 24, 72, 32, 76,
];
const FIB_EVEN_COUNTS: [u64; 18] = [1, 3, 5, 1, 9, 5, 5, 15, 3, 13, 13, 5, 25, 9, 15, 25, 1, 27];

// ---------------------------------------------------------------- oracles

fn oracle_tm(len: usize) -> Vec<u8> {
    (0..len as u64)
        .map(|i| (i.count_ones() % 2) as u8)
        .collect()
}

/// Fibonacci word by iterating `a -> ab`, `b -> a` (0 = a, 1 = b).
fn oracle_fib(len: usize) -> Vec<u8> {
    let mut w = vec![0u8];
    while w.len() < len {
        w = w
            .iter()
            .flat_map(|&c| if c == 0 { vec![0, 1] } else { vec![0] })
            .collect();
    }
    w.truncate(len);
    w
}

/// Layered word: `(a^2 b)^3 (a^4 b)^3 (a^8 b)^3 ...`.
fn oracle_layered(len: usize) -> Vec<u8> {
    let mut w = Vec::new();
    let mut k = 1;
    while w.len() < len {
        for _ in 0..3 {
            w.extend(std::iter::repeat(0).take(1 << k));
            w.push(1);
        }
        k += 1;
    }
    w.truncate(len);
    w
}

fn is_square(f: &[u8]) -> bool {
    let h = f.len() / 2;
    f.len() % 2 == 0 && {
        let mut c = [0i64; 8];
        for &x in &f[..h] {
            c[x as usize] += 1;
        }
        for &x in &f[h..] {
            c[x as usize] -= 1;
        }
        c.iter().all(|&v| v == 0)
    }
}

/// Distinct abelian squares of length `m` in `w`.
fn oracle_count(w: &[u8], m: usize) -> u64 {
    if m == 0 || m > w.len() {
        return 0;
    }
    w.windows(m)
        .filter(|f| is_square(f))
        .collect::<HashSet<_>>()
        .len() as u64
}

/// Same as `oracle_count`, for binary words, with a prefix sum for the half test.
fn oracle_count_binary(w: &[u8], ones: &[u32], m: usize) -> u64 {
    let h = m / 2;
    let mut seen = HashSet::new();
    for i in 0..=w.len() - m {
        if ones[i + h] - ones[i] == ones[i + m] - ones[i + h] {
            seen.insert(&w[i..i + m]);
        }
    }
    seen.len() as u64
}

fn prefix_ones(w: &[u8]) -> Vec<u32> {
    let mut p = vec![0u32; w.len() + 1];
    for (i, &c) in w.iter().enumerate() {
        p[i + 1] = p[i] + c as u32;
    }
    p
}

/// `f(n)` for `n <= n_max` on a prefix of length `len`.
fn oracle_tm_f(len: usize, n_max: usize) -> Vec<u64> {
    let w = oracle_tm(len);
    let ones = prefix_ones(&w);
    (1..=n_max)
        .map(|n| oracle_count_binary(&w, &ones, 2 * n))
        .collect()
}

fn distinct(w: &[u8], m: usize) -> HashSet<&[u8]> {
    w.windows(m).collect()
}

fn letters(s: &[u8]) -> String {
    s.iter().map(|&c| if c == 0 { 'a' } else { 'b' }).collect()
}

fn binary_word(s: &[u8]) -> Word {
    Word::new(Alphabet::binary(), s.to_vec()).unwrap()
}

/// Direct balance test: every two factors of equal length differ by at most one `b`.
fn oracle_balanced(w: &[u8]) -> bool {
    (1..=w.len()).all(|m| {
        let counts: Vec<usize> = w
            .windows(m)
            .map(|f| f.iter().filter(|&&c| c == 1).count())
            .collect();
        counts.iter().max().unwrap() - counts.iter().min().unwrap() <= 1
    })
}

/// Supremum of `|#points in window / N - length|` over windows with sample-point endpoints.
fn oracle_discrepancy(alpha: f64, n: usize) -> f64 {
    let mut p: Vec<f64> = (0..=n).map(|k| (k as f64 * alpha).fract()).collect();
    p.sort_by(f64::total_cmp);
    let mut ends = p.clone();
    ends.push(1.0);
    let nf = n as f64;
    let mut best: f64 = 0.0;
    for (i, &x) in ends.iter().enumerate() {
        for &y in &ends[i..] {
            let closed = p.iter().filter(|&&t| t >= x && t <= y).count() as f64;
            let open = p.iter().filter(|&&t| t > x && t < y).count() as f64;
            best = best.max(closed / nf - (y - x)).max((y - x) - open / nf);
        }
    }
    best
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let k = s.len();
    if k % 2 == 1 {
        s[k / 2]
    } else {
        (s[k / 2 - 1] + s[k / 2]) / 2.0
    }
}

// ---------------------------------------------------------------- criteria

type Outcome = Result<String, String>;

fn check(cond: bool, ok: impl Into<String>, bad: impl Into<String>) -> Outcome {
    if cond {
        Ok(ok.into())
    } else {
        Err(bad.into())
    }
}

fn c1_table_one() -> Outcome {
    let t = Instant::now();
    let values: Vec<u64> = (1..=20)
        .map(|n| tm_f_bruteforce(n).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let elapsed = t.elapsed();
    check(
        values == TM_ORDERS && elapsed <= TIME_LIMIT,
        format!("f(1..20) = reference values in {elapsed:.2?}"),
        format!("got {values:?} in {elapsed:.2?}"),
    )
}

fn c2_linear_representation() -> Outcome {
    let t = Instant::now();
    let (brute, cert) =
        tm_f_bruteforce_table(256, Default::default()).map_err(|e| e.to_string())?;
    let lin = tm_f_linear_rep_range(256).map_err(|e| e.to_string())?;
    let oracle = oracle_tm_f(1 << 13, 256);
    let oracle_doubled = oracle_tm_f(1 << 14, 256);
    if oracle != oracle_doubled {
        return Err("oracle prefix too short".into());
    }
    if let Some(i) = (0..256).find(|&i| BigInt::from(brute[i]) != lin[i] || brute[i] != oracle[i]) {
        return Err(format!(
            "n = {}: brute {} matrix {} oracle {}",
            i + 1,
            brute[i],
            lin[i],
            oracle[i]
        ));
    }
    // exact evaluation refuses to return a non-integer
    let all = tm_f_linear_rep_range(100_000).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    check(
        all.len() == 100_000 && elapsed <= TIME_LIMIT,
        format!(
            "n <= 256 agree (prefix {}), integer for n <= 100000, f(100000) = {}, {elapsed:.2?}",
            cert.prefix_len, all[99_999]
        ),
        format!("{} values in {elapsed:.2?}", all.len()),
    )
}

fn c3_recurrence() -> Outcome {
    let v = tm_recurrence_system().map_err(|e| e.to_string())?;
    if !v.report.trusted() || v.report.instances.is_empty() {
        return Err(format!("validation: {:?}", v.report));
    }
    let rule = |lhs: &str| v.report.rules.iter().find(|r| r.original.starts_with(lhs));
    let r4 = rule("f(16n+4)").ok_or("rule 16n+4 missing")?;
    if !matches!(r4.status, RuleStatus::SignResolved { .. }) {
        return Err(format!("16n+4 status {:?}", r4.status));
    }
    let lin = tm_f_linear_rep_range(10_000).map_err(|e| e.to_string())?;
    let rec = tm_f_recurrence_range(10_000).map_err(|e| e.to_string())?;
    let changed: Vec<String> = v
        .report
        .rules
        .iter()
        .filter(|r| !matches!(r.status, RuleStatus::Valid))
        .map(|r| r.resolved.clone())
        .collect();
    check(
        lin == rec,
        format!(
            "{} rules validated on {} instances each; adjusted: {changed:?}; n <= 10000 agree",
            v.report.rules.len(),
            v.report.instances.len()
        ),
        format!(
            "first mismatch at n = {}",
            (0..lin.len()).find(|&i| lin[i] != rec[i]).unwrap_or(0) + 1
        ),
    )
}

fn c4_closed_forms() -> Outcome {
    for n in 1..=8u32 {
        let four = BigInt::from(4).pow(n);
        let min_arg = u64::try_from(&four).unwrap() - 1;
        let max_arg = 3u64 << n;
        let min_expect = (BigInt::from(4) * &four - 4) / 3;
        let max_expect = BigInt::from(14) * BigInt::from(2).pow(n) - 4;
        let a = tm_f_linear_rep(min_arg).map_err(|e| e.to_string())?;
        let b = tm_f_linear_rep(max_arg).map_err(|e| e.to_string())?;
        if a != min_expect || b != max_expect {
            return Err(format!("n = {n}: f({min_arg}) = {a} (want {min_expect}), f({max_arg}) = {b} (want {max_expect})"));
        }
    }
    Ok("f(4^n - 1) and f(3 * 2^n) match for n = 1..8".into())
}

fn c5_table_two() -> Outcome {
    let golden = CertifiedReal::new(ContinuedFraction::golden());
    let formula: Vec<u64> = (1..=18)
        .map(|h| sturmian_as_count(&golden, 2 * h).unwrap())
        .collect();
    if formula != FIB_EVEN_COUNTS {
        return Err(format!("formula {formula:?}"));
    }
    let counts = sturmian_as_counts(&golden, 60).map_err(|e| e.to_string())?;
    let w = oracle_fib(1 << 12);
    let w2 = oracle_fib(1 << 13);
    for (m, c) in counts {
        let o = oracle_count(&w, m);
        if o != c || o != oracle_count(&w2, m) {
            return Err(format!("length {m}: formula {c}, word {o}"));
        }
    }
    Ok("even n = 2..36 match the reference values; formula = word counts for even n <= 60".into())
}

fn c6_worked_examples() -> Outcome {
    let golden = CertifiedReal::new(ContinuedFraction::golden());
    let c6 = sturmian_as_count(&golden, 6).map_err(|e| e.to_string())?;
    let c8 = sturmian_as_count(&golden, 8).map_err(|e| e.to_string())?;
    let p6 = interval_partition(&golden, 6).map_err(|e| e.to_string())?;
    let tags: Vec<(String, Weight)> = p6
        .intervals
        .iter()
        .map(|i| (i.factor.clone(), i.weight))
        .collect();
    let expect6 = [
        ("babaab", Weight::Light),
        ("baabab", Weight::Light),
        ("baabaa", Weight::Heavy),
        ("ababaa", Weight::Heavy),
        ("abaaba", Weight::Heavy),
        ("aababa", Weight::Heavy),
        ("aabaab", Weight::Heavy),
    ];
    let ok6 = tags.len() == 7
        && tags
            .iter()
            .zip(&expect6)
            .all(|((f, w), (ef, ew))| f == ef && w == ew);
    let p8 = interval_partition(&golden, 8).map_err(|e| e.to_string())?;
    let light8: Vec<&str> = p8
        .intervals
        .iter()
        .filter(|i| i.weight == Weight::Light)
        .map(|i| i.factor.as_str())
        .collect();
    let heavy8: HashSet<&str> = p8
        .intervals
        .iter()
        .filter(|i| i.weight == Weight::Heavy)
        .map(|i| i.factor.as_str())
        .collect();
    let expect_heavy8: HashSet<&str> = [
        "aabaabab", "aababaab", "abaabaab", "abaababa", "ababaaba", "baabaaba", "baababaa",
        "babaabaa",
    ]
    .into();
    check(
        c6 == 5 && c8 == 1 && ok6 && light8 == ["babaabab"] && heavy8 == expect_heavy8,
        "counts 5 and 1; L0, L1 light and L2..L6 heavy at n = 6; tags at n = 8 match",
        format!("c6 {c6} c8 {c8} tags6 {tags:?} light8 {light8:?}"),
    )
}

fn c7_discrepancy() -> Outcome {
    let golden = CertifiedReal::new(ContinuedFraction::golden());
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut rows = Vec::new();
    for n in [10, 100, 1_000, 10_000, 100_000] {
        let d = discrepancy(&golden, n).map_err(|e| e.to_string())?;
        let bound = 3.0 + (1.0 / phi.ln() + 1.0 / 2f64.ln()) * (n as f64).ln();
        if (bound - discrepancy_bound(1, n)).abs() > 1e-12 || d.scaled() > bound {
            return Err(format!("N = {n}: N*D_N = {} bound {bound}", d.scaled()));
        }
        rows.push(format!("{n}:{:.3}/{bound:.1}", d.scaled()));
    }
    let a = phi - 1.0;
    for n in 1..=200 {
        let d = discrepancy(&golden, n).map_err(|e| e.to_string())?;
        let o = oracle_discrepancy(a, n);
        if (d.preview - o).abs() > DISCREPANCY_TOL {
            return Err(format!("N = {n}: exact {} oracle {o}", d.preview));
        }
    }
    Ok(format!(
        "N*D_N under the bound [{}]; N <= 200 matches the oracle within {DISCREPANCY_TOL:e}",
        rows.join(" ")
    ))
}

fn c8_properties() -> Outcome {
    // (a) spectrum against string sets, every binary word of length <= 12
    for n in 1..=12usize {
        for x in 0u32..(1 << n) {
            let s: Vec<u8> = (0..n).map(|i| ((x >> i) & 1) as u8).collect();
            let spec = spectrum(&binary_word(&s));
            if let Some(m) = (1..=n).find(|&m| spec.at(m) != oracle_count(&s, m)) {
                return Err(format!("(a) {} at length {m}", letters(&s)));
            }
        }
    }
    // (b) balanced words: divisible Parikh vector iff abelian k-power
    let mut balanced = 0;
    for n in 1..=16usize {
        for x in 0u32..(1 << n) {
            let s: Vec<u8> = (0..n).map(|i| ((x >> i) & 1) as u8).collect();
            if !oracle_balanced(&s) {
                continue;
            }
            balanced += 1;
            let w = binary_word(&s);
            let p = parikh(&w);
            for k in 2..=4 {
                let divisible = p.counts().iter().all(|c| c % k == 0);
                if divisible != is_abelian_k_power(&w, k).unwrap() {
                    return Err(format!("(b) {} k = {k}", letters(&s)));
                }
            }
        }
    }
    // (c) powers
    for n in 1..=6usize {
        for x in 0u32..(1 << n) {
            let u: Vec<u8> = (0..n).map(|i| ((x >> i) & 1) as u8).collect();
            for k in 1..=5 {
                let w: Vec<u8> = u.iter().copied().cycle().take(n * k).collect();
                let total: u64 = (1..=w.len()).map(|m| oracle_count(&w, m)).sum();
                let lib = spectrum(&binary_word(&w)).total;
                if total != lib || (total as usize) * k > w.len() * w.len() {
                    return Err(format!("(c) u = {} k = {k}: {total}", letters(&u)));
                }
            }
        }
    }
    // (d) factors by end letters on a prefix long enough for length 200
    let t = oracle_tm(1 << 13);
    for n in 2..=200usize {
        let f = distinct(&t, n);
        let aa = f.iter().filter(|u| u[0] == u[n - 1]).count();
        let ab = f.len() - aa;
        let (laa, lab) = tm_faa_fab(n).map_err(|e| e.to_string())?;
        let p = tm_complexity(n).map_err(|e| e.to_string())?;
        if (laa, lab) != (aa, ab)
            || p != f.len()
            || 3 * aa < p
            || 3 * ab < p
            || aa + 1 < n
            || ab + 1 < n
        {
            return Err(format!("(d) n = {n}: p {p} aa {aa} ab {ab}"));
        }
    }
    // (e) right special factors of the layered word
    let lw = oracle_layered(1 << 12);
    for m in 1..=64usize {
        let next = distinct(&lw, m + 1);
        let rs: Vec<&[u8]> = distinct(&lw, m)
            .into_iter()
            .filter(|u| {
                let with = |c: u8| {
                    let mut v = u.to_vec();
                    v.push(c);
                    next.contains(v.as_slice())
                };
                with(0) && with(1)
            })
            .collect();
        if rs.len() > 4 || !rs.iter().all(|u| matches_layered_template(u)) {
            return Err(format!(
                "(e) length {m}: {:?}",
                rs.iter().map(|u| letters(u)).collect::<Vec<_>>()
            ));
        }
    }
    Ok(format!("(a) binary <= 12, (b) {balanced} balanced words <= 16, (c) |u| <= 6 k <= 5, (d) 2 <= n <= 200, (e) lengths <= 64"))
}

fn c9_density() -> Outcome {
    let ladder = [256usize, 512, 1024, 2048];
    let f: Vec<u64> = tm_f_linear_rep_range(1024)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|v| u64::try_from(v).unwrap())
        .collect();
    let tm: Vec<f64> = ladder
        .iter()
        .map(|&n| f[..n / 2].iter().sum::<u64>() as f64 / (n * n) as f64)
        .collect();
    let golden = CertifiedReal::new(ContinuedFraction::golden());
    let fib_counts = sturmian_as_counts(&golden, 2048).map_err(|e| e.to_string())?;
    let fib: Vec<f64> = ladder
        .iter()
        .map(|&n| {
            fib_counts
                .iter()
                .filter(|(m, _)| *m <= n)
                .map(|(_, c)| c)
                .sum::<u64>() as f64
                / (n * n) as f64
        })
        .collect();
    for (name, r) in [("thue-morse", &tm), ("fibonacci", &fib)] {
        let med = median(r);
        if r.iter()
            .any(|&x| x > DENSITY_FACTOR * med || x < med / DENSITY_FACTOR)
        {
            return Err(format!("{name} ratios {r:?}"));
        }
    }
    let stat = random_word_statistic(&[64, 128, 256, 512], RANDOM_SAMPLES, RANDOM_SEED)
        .map_err(|e| e.to_string())?;
    let e = stat.exponent.ok_or("no exponent")?;
    check(
        (RANDOM_EXPONENT.0..=RANDOM_EXPONENT.1).contains(&e),
        format!("thue-morse {tm:.4?}, fibonacci {fib:.4?}; random exponent {e:.3} (seed {RANDOM_SEED}, {RANDOM_SAMPLES} samples)"),
        format!("random exponent {e:.3}"),
    )
}

fn c10_probes() -> Outcome {
    let mut dominated = Vec::new();
    for n in 1..=12 {
        let b = max_as_search(n, 2, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
        let t = max_as_search(n, 3, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
        dominated.push(b.max_total >= t.max_total);
    }
    let probe = inequivalent_probe(20, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
    Ok(format!(
        "report only: binary >= ternary for {}/12 lengths; inequivalent max / n^1.5 <= {:.3}, fitted exponent {:.3}",
        dominated.iter().filter(|&&d| d).count(),
        probe.fitted_constant,
        probe.fitted_exponent.unwrap_or(f64::NAN)
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Thue-Morse table by brute force", c1_table_one),
        ("matrix evaluator", c2_linear_representation),
        ("validated recurrences", c3_recurrence),
        ("closed forms", c4_closed_forms),
        ("Fibonacci table", c5_table_two),
        ("Fibonacci worked examples", c6_worked_examples),
        ("discrepancy bound", c7_discrepancy),
        ("property suites", c8_properties),
        ("density measurements", c9_density),
        ("conjecture probes", c10_probes),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = format!("criterion {:>2}", i + 1);
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| id.contains(f.as_str()) || name.contains(f.as_str()))
        {
            continue;
        }
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("{id} PASS  {name}: {detail} [{:.1?}]", t.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("{id} FAIL  {name}: {detail} [{:.1?}]", t.elapsed());
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
