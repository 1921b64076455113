//! Command-line front end. `run` parses arguments, executes one command and returns
//! the rendered output with the process exit code.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::constructions::{layered_prefix, triple_block, LayeredSource};
use crate::count::{
    density_report, inequivalent_probe, max_as_search, random_word_statistic, spectrum,
    spectrum_up_to, stabilize, PrefixSource, SquareSpectrum, StabilityCertificate, StabilityConfig,
    DEFAULT_SEARCH_BUDGET,
};
use crate::error::{Error, Result};
use crate::report::{Format, Report, StabilityMeta};
use crate::sturmian::{
    discrepancy, discrepancy_bound, sturmian_as_counts, sturmian_density_check, sturmian_prefix,
    CertifiedReal, ContinuedFraction, SturmianSource, SturmianSpec, DEFAULT_REFINEMENT_CAP,
};
use crate::thue_morse::{
    tm_f_bruteforce_table, tm_f_linear_rep_range, tm_f_recurrence_range, tm_prefix,
    tm_recurrence_system, ThueMorseSource, TM_LINREP_VERSION,
};
use crate::verify::{parse_suites, run_suite, Suite, VerifyConfig};
use crate::words::{DedupEngine, Word};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "abelsq",
    version,
    about = "Distinct abelian squares in finite and infinite words"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Output format: csv, json or ascii-table.
    #[arg(long, global = true, default_value = "csv", value_parser = Format::from_str)]
    pub format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Largest prefix materialized while waiting for counts to stabilize.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub prefix_cap: Option<u64>,
    /// Largest number of convergents used in certified comparisons.
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    pub precision_cap: Option<u64>,
    /// Seed for randomized commands; one is generated and recorded when absent.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of a word.
    Generate {
        #[arg(long, value_parser = WordSelector::from_str)]
        word: WordSelector,
        #[arg(long)]
        length: Option<usize>,
    },
    /// Count distinct abelian squares per length (or Thue-Morse orders).
    Count {
        #[arg(long, value_parser = WordSelector::from_str)]
        word: WordSelector,
        /// Orders `n` of the Thue-Morse sequence f(n), as `a..b` (inclusive).
        #[arg(long, value_parser = parse_range, conflicts_with = "lengths")]
        orders: Option<(usize, usize)>,
        /// Factor lengths as `a..b` (inclusive) or `all` for finite words.
        #[arg(long, value_parser = Lengths::from_str)]
        lengths: Option<Lengths>,
        #[arg(long, value_enum, default_value = "brute")]
        method: Method,
    },
    /// Run invariant suites.
    Verify {
        #[arg(long, default_value = "all", value_parser = |s: &str| parse_suites(s).map(SuiteList))]
        suite: SuiteList,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Cumulative abelian-square counts over n^2.
    Density {
        /// Word selector, or `random` for the mean over uniform random binary words.
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 256)]
        n_max: usize,
        #[arg(long, value_enum)]
        method: Option<Method>,
        /// Random words per length.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        /// Lengths for random words, as `a..b` doubling from `a`.
        #[arg(long, value_parser = parse_range, default_value = "64..512")]
        ladder: (usize, usize),
    },
    /// Discrepancy of the sequence ({kα}) against its upper bound.
    Discrepancy {
        /// Continued fraction, e.g. `[0;1|1]` or `[0; 2, 1, 3]`.
        #[arg(long, default_value = "[0;|1]", value_parser = ContinuedFraction::from_str)]
        alpha: ContinuedFraction,
        #[arg(long = "N", default_value_t = 100_000)]
        n: usize,
    },
    /// Exhaustive maxima of abelian-square totals over all words of each length.
    Search {
        #[arg(long, default_value_t = 12)]
        max_len: usize,
        #[arg(long, default_value_t = 3)]
        sigma: usize,
        /// Also report maxima of Parikh-inequivalent squares on binary words.
        #[arg(long)]
        inequivalent: bool,
    },
}

/// Suites named by `--suite` (`all` expands to every suite).
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteList(pub Vec<Suite>);

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Brute,
    Matrix,
    Recurrence,
    IntervalFormula,
    All,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Matrix => "matrix",
            Method::Recurrence => "recurrence",
            Method::IntervalFormula => "interval-formula",
            Method::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum WordSelector {
    Tm,
    Fib,
    Sturmian(ContinuedFraction),
    Triple(usize),
    Layered,
    File(PathBuf),
}

impl FromStr for WordSelector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.split_once(':') {
            None if s == "tm" => WordSelector::Tm,
            None if s == "fib" => WordSelector::Fib,
            None if s == "layered" => WordSelector::Layered,
            Some(("sturmian", cf)) => WordSelector::Sturmian(cf.parse()?),
            Some(("triple", n)) => {
                let n = n.parse().map_err(|_| {
                    Error::Parse(format!("triple:<n> needs a positive integer, got {n:?}"))
                })?;
                if n == 0 {
                    return Err(Error::Parse("triple:<n> needs n >= 1".into()));
                }
                WordSelector::Triple(n)
            }
            Some(("file", path)) => WordSelector::File(path.into()),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown word {s:?} (tm, fib, sturmian:<cf>, triple:<n>, layered, file:<path>)"
                )))
            }
        })
    }
}

/// A finite word, or a source of prefixes of an infinite one.
enum Resolved {
    Finite(Word),
    Infinite(Box<dyn PrefixSource>),
}

impl WordSelector {
    fn resolve(&self) -> Result<Resolved> {
        Ok(match self {
            WordSelector::Tm => Resolved::Infinite(Box::new(ThueMorseSource)),
            WordSelector::Fib => Resolved::Infinite(Box::new(SturmianSource::fibonacci())),
            WordSelector::Sturmian(cf) => Resolved::Infinite(Box::new(SturmianSource {
                spec: SturmianSpec::characteristic(cf.clone())?,
            })),
            WordSelector::Layered => Resolved::Infinite(Box::new(LayeredSource)),
            WordSelector::Triple(n) => Resolved::Finite(triple_block(*n)?),
            WordSelector::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    Error::InvalidArgument(format!("cannot read {}: {e}", path.display()))
                })?;
                Resolved::Finite(read_word(&text)?)
            }
        })
    }

    fn slope(&self) -> Option<ContinuedFraction> {
        match self {
            WordSelector::Fib => Some(ContinuedFraction::golden()),
            WordSelector::Sturmian(cf) => Some(cf.clone()),
            _ => None,
        }
    }

    fn meta(&self) -> Value {
        match self {
            WordSelector::Tm => json!({
                "name": "thue-morse",
                "alphabet": ["0", "1"],
                "letter_map": {"0": "a", "1": "b"},
            }),
            WordSelector::Fib => {
                json!({"name": "fibonacci", "alpha": "[0; | 1]", "alphabet": ["a", "b"]})
            }
            WordSelector::Sturmian(cf) => {
                json!({"name": "sturmian", "alpha": cf.to_string(), "convention": "closed-left", "alphabet": ["a", "b"]})
            }
            WordSelector::Triple(n) => json!({"name": "triple", "n": n, "alphabet": ["a", "b"]}),
            WordSelector::Layered => json!({"name": "layered", "alphabet": ["a", "b"]}),
            WordSelector::File(p) => json!({"name": "file", "path": p.display().to_string()}),
        }
    }
}

/// Words in files: `0`/`1` digits, or letters `a`, `b`, `c`, ...
fn read_word(text: &str) -> Result<Word> {
    let trimmed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if trimmed.is_empty() {
        return Err(Error::InvalidArgument("empty word".into()));
    }
    if trimmed.chars().all(|c| c == '0' || c == '1') {
        Word::parse_binary(&trimmed)
    } else {
        Word::from_letters(&trimmed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Lengths {
    All,
    Range(usize, usize),
}

impl FromStr for Lengths {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Lengths::All);
        }
        let (a, b) = parse_range(s)?;
        Ok(Lengths::Range(a, b))
    }
}

/// `a..b` (inclusive) or a single `n`.
pub fn parse_range(s: &str) -> Result<(usize, usize)> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| Error::Parse(format!("bad range {s:?}")))
    };
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.trim_start_matches('='))?),
        None => (num(s)?, num(s)?),
    };
    if a == 0 || a > b {
        return Err(Error::Parse(format!("range {s:?} needs 1 <= a <= b")));
    }
    Ok((a, b))
}

struct Ctx {
    stability: StabilityConfig,
    precision_cap: usize,
    format: Format,
}

impl Ctx {
    fn alpha(&self, cf: ContinuedFraction) -> CertifiedReal {
        CertifiedReal::with_cap(cf, self.precision_cap)
    }

    fn echo(&self, mut r: Report) -> Report {
        r.config
            .insert("prefix_cap".into(), json!(self.stability.cap));
        r.config
            .insert("precision_cap".into(), json!(self.precision_cap));
        r.config.insert("format".into(), json!(self.format));
        r.note("matrix_data_version", TM_LINREP_VERSION);
        r
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        _ if e.is_resource_cap() => EXIT_RESOURCE,
        Error::NonInteger { .. } | Error::Recurrence(_) => EXIT_FAILURE,
        _ => EXIT_USAGE,
    }
}

/// Runs the command line `args` (including the program name). Returns stdout text,
/// stderr text and the exit code.
pub fn run<I, T>(args: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (text, String::new(), code)
            } else {
                (String::new(), text, code)
            };
        }
    };
    let ctx = Ctx {
        stability: cli
            .global
            .prefix_cap
            .map_or_else(StabilityConfig::default, |c| {
                StabilityConfig::with_cap(c as usize)
            }),
        precision_cap: cli
            .global
            .precision_cap
            .map_or(DEFAULT_REFINEMENT_CAP, |c| c as usize),
        format: cli.global.format,
    };
    let work = || execute(&cli.command, &cli.global, &ctx);
    let result = match cli.global.threads {
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(work),
            Err(e) => Err(usage(format!("thread pool: {e}"))),
        },
        None => work(),
    };
    match result {
        Ok(Output::Text(t)) => (t, String::new(), EXIT_OK),
        Ok(Output::Report(r)) => {
            let code = if r.passed() { EXIT_OK } else { EXIT_FAILURE };
            let err = r.failures.iter().map(|f| format!("FAIL: {f}\n")).collect();
            (r.render(ctx.format), err, code)
        }
        Err(e) => (String::new(), format!("error: {e}\n"), exit_code(&e)),
    }
}

enum Output {
    Text(String),
    Report(Report),
}

fn execute(cmd: &Command, global: &GlobalArgs, ctx: &Ctx) -> Result<Output> {
    match cmd {
        Command::Generate { word, length } => generate(word, *length, ctx),
        Command::Count {
            word,
            orders,
            lengths,
            method,
        } => count(word, *orders, lengths.as_ref(), *method, ctx),
        Command::Verify {
            suite,
            max_len,
            n_max,
        } => {
            let seed = global.seed.unwrap_or(0);
            verify(
                &suite.0,
                VerifyConfig {
                    max_len: *max_len,
                    n_max: *n_max,
                    seed,
                },
                ctx,
            )
        }
        Command::Density {
            word,
            n_max,
            method,
            samples,
            ladder,
        } => density(word, *n_max, *method, *samples, *ladder, global.seed, ctx),
        Command::Discrepancy { alpha, n } => discrepancy_cmd(alpha, *n, ctx),
        Command::Search {
            max_len,
            sigma,
            inequivalent,
        } => search(*max_len, *sigma, *inequivalent, ctx),
    }
    .map(|o| match o {
        Output::Report(r) => Output::Report(ctx.echo(r)),
        t => t,
    })
}

fn generate(word: &WordSelector, length: Option<usize>, ctx: &Ctx) -> Result<Output> {
    let w = match (word.resolve()?, length) {
        (Resolved::Finite(w), None) => w,
        (Resolved::Finite(w), Some(n)) => w.prefix(n.min(w.len()))?,
        (Resolved::Infinite(_), None) => return Err(usage("infinite words need --length")),
        (Resolved::Infinite(_), Some(0)) => return Err(usage("--length must be positive")),
        (Resolved::Infinite(_), Some(n)) => match word {
            WordSelector::Tm => tm_prefix(n),
            WordSelector::Layered => layered_prefix(n)?,
            _ => {
                let cf = word.slope().expect("sturmian selector");
                sturmian_prefix(
                    &SturmianSpec::new(
                        ctx.alpha(cf),
                        crate::sturmian::LinearForm::alpha_times(1),
                        Default::default(),
                    )?,
                    n,
                )?
            }
        },
    };
    if ctx.format == Format::Json {
        let v = json!({"word_meta": word.meta(), "length": w.len(), "word": w.to_string()});
        return Ok(Output::Text(
            serde_json::to_string_pretty(&v).expect("json") + "\n",
        ));
    }
    Ok(Output::Text(format!("{w}\n")))
}

fn certificate_note(r: &mut Report, cert: StabilityCertificate) {
    r.note("prefix_len", cert.prefix_len);
    r.note("compared_len", cert.compared_len);
    r.stability = Some(StabilityMeta::from(cert));
}

fn count(
    word: &WordSelector,
    orders: Option<(usize, usize)>,
    lengths: Option<&Lengths>,
    method: Method,
    ctx: &Ctx,
) -> Result<Output> {
    let is_tm = *word == WordSelector::Tm;
    let slope = word.slope();
    let allowed: Vec<Method> = match (is_tm, slope.is_some()) {
        (true, _) => vec![Method::Brute, Method::Matrix, Method::Recurrence],
        (_, true) => vec![Method::Brute, Method::IntervalFormula],
        _ => vec![Method::Brute],
    };
    let methods = if method == Method::All {
        allowed.clone()
    } else {
        vec![method]
    };
    if !allowed.contains(&methods[0]) {
        return Err(usage(format!(
            "method {} does not apply to this word",
            method.name()
        )));
    }

    // the rows are indexed by factor length m; --orders n means m = 2n and is Thue-Morse only
    let (index_name, ms): (&str, Vec<usize>) = match (orders, lengths) {
        (Some((a, b)), None) => {
            if !is_tm {
                return Err(usage("--orders applies to --word tm; use --lengths"));
            }
            ("n", (a..=b).map(|n| 2 * n).collect())
        }
        (None, Some(Lengths::Range(a, b))) => ("length", (*a..=*b).collect()),
        (None, Some(Lengths::All)) | (None, None) => match word.resolve()? {
            Resolved::Finite(w) => ("length", (1..=w.len()).collect()),
            Resolved::Infinite(_) => {
                return Err(usage("infinite words need --lengths a..b or --orders a..b"))
            }
        },
        (Some(_), Some(_)) => return Err(usage("--orders and --lengths are exclusive")),
    };
    let max_m = *ms.iter().max().expect("nonempty range");

    let mut r = Report::new("count")
        .config("word", word.meta())
        .config("method", method.name())
        .config(
            index_name,
            [
                ms[0] / if index_name == "n" { 2 } else { 1 },
                max_m / if index_name == "n" { 2 } else { 1 },
            ],
        );
    r.word_meta = Some(word.meta());

    let mut columns: Vec<Vec<u64>> = Vec::new();
    let mut single_spectrum: Option<SquareSpectrum> = None;
    for &m in &methods {
        let values: Vec<u64> = match m {
            Method::Brute => {
                let spec = match word.resolve()? {
                    Resolved::Finite(w) => spectrum(&w),
                    Resolved::Infinite(_) if is_tm && index_name == "n" => {
                        let (table, cert) = tm_f_bruteforce_table(max_m / 2, ctx.stability)?;
                        certificate_note(&mut r, cert);
                        SquareSpectrum::from_counts(
                            cert.prefix_len,
                            table.iter().enumerate().map(|(i, &v)| (2 * (i + 1), v)),
                        )
                    }
                    Resolved::Infinite(src) => {
                        let (counts, cert) = stabilize(src.as_ref(), max_m, ctx.stability, |w| {
                            spectrum_up_to(w, max_m, DedupEngine::default()).counts
                        })?;
                        certificate_note(&mut r, cert);
                        SquareSpectrum::from_counts(cert.prefix_len, counts)
                    }
                };
                let v = ms.iter().map(|&m| spec.at(m)).collect();
                single_spectrum = Some(spec);
                v
            }
            Method::Matrix | Method::Recurrence => {
                let n_max = (max_m / 2) as u64;
                let f = if m == Method::Matrix {
                    tm_f_linear_rep_range(n_max)?
                } else {
                    let v = tm_recurrence_system()?;
                    r.note(
                        "recurrence_rules",
                        v.report
                            .rules
                            .iter()
                            .map(|x| x.resolved.to_string())
                            .collect::<Vec<_>>(),
                    );
                    tm_f_recurrence_range(n_max)?
                };
                ms.iter()
                    .map(|&m| {
                        if m % 2 == 1 {
                            Ok(0)
                        } else {
                            big_to_u64(&f[m / 2 - 1])
                        }
                    })
                    .collect::<Result<_>>()?
            }
            Method::IntervalFormula => {
                let alpha = ctx.alpha(slope.clone().expect("sturmian word"));
                let even = sturmian_as_counts(&alpha, max_m)?;
                r.note("alpha", alpha.cf().to_string());
                let lookup: std::collections::BTreeMap<usize, u64> = even.into_iter().collect();
                ms.iter()
                    .map(|m| lookup.get(m).copied().unwrap_or(0))
                    .collect()
            }
            Method::All => unreachable!("expanded above"),
        };
        columns.push(values);
    }

    let label = |m: usize| if index_name == "n" { m / 2 } else { m };
    if methods.len() == 1 {
        if let (Some(spec), "length") = (&single_spectrum, index_name) {
            let stability = r.stability.clone();
            r = r.with_spectrum(spec, &ms);
            r.stability = stability.or(Some(StabilityMeta {
                prefix_len: spec.word_len,
                certified: true,
            }));
        } else {
            r = r.columns(&[index_name, "count"]);
            for (i, &m) in ms.iter().enumerate() {
                r.push_row(vec![json!(label(m)), json!(columns[0][i])]);
            }
            r.total = Some(columns[0].iter().sum());
        }
    } else {
        let mut names = vec![index_name];
        names.extend(methods.iter().map(|m| m.name()));
        names.push("agree");
        r = r.columns(&names);
        for (i, &m) in ms.iter().enumerate() {
            let vals: Vec<u64> = columns.iter().map(|c| c[i]).collect();
            let agree = vals.windows(2).all(|w| w[0] == w[1]);
            if !agree {
                r.failures.push(format!(
                    "{index_name}={}: methods disagree {vals:?}",
                    label(m)
                ));
            }
            let mut row = vec![json!(label(m))];
            row.extend(vals.iter().map(|v| json!(v)));
            row.push(json!(agree));
            r.push_row(row);
        }
    }
    r.note(
        "methods",
        methods.iter().map(|m| m.name()).collect::<Vec<_>>(),
    );
    Ok(Output::Report(r))
}

fn big_to_u64(v: &BigInt) -> Result<u64> {
    u64::try_from(v)
        .map_err(|_| Error::InvalidArgument(format!("value {v} does not fit in 64 bits")))
}

fn verify(suites: &[Suite], cfg: VerifyConfig, _ctx: &Ctx) -> Result<Output> {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let mut r = Report::new("verify")
        .config(
            "suites",
            suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
        )
        .config("max_len", cfg.max_len)
        .config("n_max", cfg.n_max)
        .config("seed", cfg.seed)
        .columns(&["suite", "check", "passed", "detail"]);
    for s in suites {
        for c in run_suite(s, &cfg) {
            if !c.passed {
                r.failures
                    .push(format!("{}/{}: {}", c.suite, c.name, c.detail));
            }
            r.push_row(vec![
                json!(c.suite),
                json!(c.name),
                json!(c.passed),
                json!(c.detail),
            ]);
        }
    }
    Ok(Output::Report(r))
}

#[allow(clippy::too_many_arguments)]
fn density(
    word: &str,
    n_max: usize,
    method: Option<Method>,
    samples: usize,
    ladder: (usize, usize),
    seed: Option<u64>,
    ctx: &Ctx,
) -> Result<Output> {
    if n_max < 2 {
        return Err(usage("--n-max must be at least 2"));
    }
    if word == "random" {
        let seed = seed.unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_nanos() as u64)
                .unwrap_or(0)
        });
        let mut lengths = Vec::new();
        let mut n = ladder.0;
        while n <= ladder.1 {
            lengths.push(n);
            n *= 2;
        }
        let stat = random_word_statistic(&lengths, samples, seed)?;
        let mut r = Report::new("density")
            .config("word", "random")
            .config("samples", samples)
            .config("ladder", lengths.clone())
            .config("seed", seed)
            .columns(&["n", "samples", "mean_total", "mean_over_n2"]);
        for row in &stat.rows {
            r.push_row(vec![
                json!(row.n),
                json!(row.samples),
                json!(row.mean_total),
                json!(row.mean_total / (row.n * row.n) as f64),
            ]);
        }
        r.note("seed", seed);
        r.note("fitted_exponent", stat.exponent);
        return Ok(Output::Report(r));
    }
    let sel: WordSelector = word.parse()?;
    let method = method.unwrap_or(match &sel {
        WordSelector::Tm => Method::Matrix,
        WordSelector::Fib | WordSelector::Sturmian(_) => Method::IntervalFormula,
        _ => Method::Brute,
    });
    let mut r = Report::new("density")
        .config("word", sel.meta())
        .config("n_max", n_max)
        .config("method", method.name());
    r.word_meta = Some(sel.meta());
    let rows = match (method, &sel) {
        (Method::Matrix, WordSelector::Tm) => {
            let f = tm_f_linear_rep_range((n_max / 2) as u64)?;
            let f: Vec<u64> = f.iter().map(big_to_u64).collect::<Result<_>>()?;
            crate::count::DensityReport::from_counts("thue-morse", n_max, |m| {
                if m % 2 == 0 {
                    f[m / 2 - 1]
                } else {
                    0
                }
            })
            .rows
        }
        (Method::IntervalFormula, WordSelector::Fib | WordSelector::Sturmian(_)) => {
            let alpha = ctx.alpha(sel.slope().expect("sturmian"));
            let check = sturmian_density_check(&alpha, n_max)?;
            r.note("min_ratio_tail", check.min_ratio_tail);
            r.note("quarter_windows", &check.windows);
            check.report.rows
        }
        (Method::Brute, _) => match sel.resolve()? {
            Resolved::Finite(w) => {
                let spec = spectrum(&w);
                crate::count::DensityReport::from_spectrum("finite", n_max.min(w.len()), &spec).rows
            }
            Resolved::Infinite(src) => {
                let d = density_report(src.as_ref(), n_max, &[], ctx.stability)?;
                if let Some(cert) = d.stability {
                    certificate_note(&mut r, cert);
                }
                d.rows
            }
        },
        _ => {
            return Err(usage(format!(
                "method {} does not apply to density of this word",
                method.name()
            )))
        }
    };
    r = r.columns(&["n", "cumulative", "ratio"]);
    for row in rows {
        r.push_row(vec![json!(row.n), json!(row.cumulative), json!(row.ratio)]);
    }
    Ok(Output::Report(r))
}

fn discrepancy_cmd(cf: &ContinuedFraction, n: usize, ctx: &Ctx) -> Result<Output> {
    if n == 0 {
        return Err(usage("--N must be positive"));
    }
    let alpha = ctx.alpha(cf.clone());
    let k = cf
        .max_quotient()
        .ok_or_else(|| usage("α needs at least one partial quotient"))?;
    let mut ns: Vec<usize> = std::iter::successors(Some(10usize), |x| x.checked_mul(10))
        .take_while(|&x| x <= n)
        .collect();
    if ns.last() != Some(&n) {
        ns.push(n);
    }
    let mut r = Report::new("discrepancy")
        .config("alpha", cf.to_string())
        .config("N", n)
        .config("K", k)
        .columns(&["N", "N*D_N", "bound"]);
    let mut exact = Vec::new();
    for &m in &ns {
        let d = discrepancy(&alpha, m)?;
        let bound = discrepancy_bound(k, m);
        if d.scaled() > bound {
            r.failures
                .push(format!("N={m}: N*D_N = {} exceeds {bound}", d.scaled()));
        }
        r.push_row(vec![json!(m), json!(d.scaled()), json!(bound)]);
        exact.push(json!({"N": m, "D_N": d.value.to_string(), "lower": d.lower, "upper": d.upper}));
    }
    r.note("exact", exact);
    r.note("precision_cap", alpha.cap());
    Ok(Output::Report(r))
}

fn search(max_len: usize, sigma: usize, inequivalent: bool, _ctx: &Ctx) -> Result<Output> {
    if sigma < 2 {
        return Err(usage("--sigma must be at least 2"));
    }
    let mut r = Report::new("search")
        .config("max_len", max_len)
        .config("sigma", sigma);
    let cols: Vec<String> = if sigma == 2 {
        vec!["n".into(), "max_2".into(), "witness_2".into()]
    } else {
        vec![
            "n".into(),
            "max_2".into(),
            format!("max_{sigma}"),
            "binary_at_least".into(),
            "witness_2".into(),
            format!("witness_{sigma}"),
        ]
    };
    r.columns = cols;
    let mut examined = 0u64;
    for n in 1..=max_len {
        let b = max_as_search(n, 2, DEFAULT_SEARCH_BUDGET)?;
        examined += b.words_examined;
        if sigma == 2 {
            r.push_row(vec![json!(n), json!(b.max_total), json!(b.witness)]);
            continue;
        }
        let t = max_as_search(n, sigma, DEFAULT_SEARCH_BUDGET)?;
        examined += t.words_examined;
        r.push_row(vec![
            json!(n),
            json!(b.max_total),
            json!(t.max_total),
            json!(b.max_total >= t.max_total),
            json!(b.witness),
            json!(t.witness),
        ]);
    }
    r.note("words_examined", examined);
    if inequivalent {
        let probe = inequivalent_probe(max_len, DEFAULT_SEARCH_BUDGET)?;
        r.note("inequivalent", &probe);
    }
    Ok(Output::Report(r))
}
