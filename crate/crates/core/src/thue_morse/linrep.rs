//! Linear representations `f(n) = v · M[a1] ⋯ M[ai] · w` over base-2 digits.

use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Versioned data file shipped with the crate.
pub const TM_LINREP_DATA: &str = include_str!("../../data/tm_linrep_v1.txt");
pub const TM_LINREP_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation {
    pub name: String,
    pub version: u32,
    pub v: Vec<BigRational>,
    /// `matrices[d]` is applied for digit `d`.
    pub matrices: [Vec<Vec<BigRational>>; 2],
    pub w: Vec<BigRational>,
}

fn parse_row(tokens: &[&str], rank: usize, what: &str) -> Result<Vec<BigRational>> {
    if tokens.len() != rank {
        return Err(Error::Parse(format!(
            "{what}: expected {rank} entries, found {}",
            tokens.len()
        )));
    }
    tokens
        .iter()
        .map(|t| {
            BigRational::from_str(t)
                .map_err(|e| Error::Parse(format!("{what}: bad rational {t:?}: {e}")))
        })
        .collect()
}

impl FromStr for LinearRepresentation {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut name = String::new();
        let mut version = None;
        let mut rank = None;
        let mut v = None;
        let mut w = None;
        let mut matrices: [Vec<Vec<BigRational>>; 2] = [Vec::new(), Vec::new()];
        let mut current: Option<usize> = None;
        let mut format_seen = false;
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let need_rank =
                || rank.ok_or_else(|| Error::Parse("rank must precede data rows".into()));
            match tokens[0] {
                "format" => {
                    if tokens.get(1) != Some(&"abelsq-linrep") {
                        return Err(Error::Parse(format!("unknown format line {line:?}")));
                    }
                    format_seen = true;
                }
                "version" => version = tokens.get(1).and_then(|t| t.parse().ok()),
                "name" => name = tokens[1..].join(" "),
                "rank" => rank = tokens.get(1).and_then(|t| t.parse::<usize>().ok()),
                "v" => v = Some(parse_row(&tokens[1..], need_rank()?, "v")?),
                "w" => w = Some(parse_row(&tokens[1..], need_rank()?, "w")?),
                "matrix" => {
                    let d: usize = tokens
                        .get(1)
                        .and_then(|t| t.parse().ok())
                        .filter(|&d| d < 2)
                        .ok_or_else(|| Error::Parse(format!("bad matrix header {line:?}")))?;
                    current = Some(d);
                }
                _ => {
                    let d = current.ok_or_else(|| {
                        Error::Parse(format!("row outside matrix block: {line:?}"))
                    })?;
                    let r = need_rank()?;
                    matrices[d].push(parse_row(&tokens, r, &format!("matrix {d}"))?);
                }
            }
        }
        if !format_seen {
            return Err(Error::Parse("missing format line".into()));
        }
        let rank = rank.ok_or_else(|| Error::Parse("missing rank".into()))?;
        let version = version.ok_or_else(|| Error::Parse("missing version".into()))?;
        for (d, m) in matrices.iter().enumerate() {
            if m.len() != rank {
                return Err(Error::Parse(format!(
                    "matrix {d} has {} rows, expected {rank}",
                    m.len()
                )));
            }
        }
        Ok(Self {
            name,
            version,
            v: v.ok_or_else(|| Error::Parse("missing v".into()))?,
            matrices,
            w: w.ok_or_else(|| Error::Parse("missing w".into()))?,
        })
    }
}

/// Row vector with one shared denominator.
#[derive(Clone, Debug)]
struct ScaledRow {
    num: Vec<BigInt>,
    den: BigInt,
}

impl ScaledRow {
    fn reduce(mut self) -> Self {
        let g = self.num.iter().fold(self.den.clone(), |g, x| g.gcd(x));
        if !g.is_one() && !g.is_zero() {
            for x in &mut self.num {
                *x /= &g;
            }
            self.den /= &g;
        }
        self
    }
}

/// Integer form of the representation: every rational entry over one common denominator.
#[derive(Clone, Debug)]
struct IntegerForm {
    v: ScaledRow,
    matrices: [Vec<Vec<BigInt>>; 2],
    matrix_den: BigInt,
    w: Vec<BigInt>,
    w_den: BigInt,
}

fn common_den<'a>(xs: impl Iterator<Item = &'a BigRational>) -> BigInt {
    xs.fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

fn scale(x: &BigRational, den: &BigInt) -> BigInt {
    x.numer() * (den / x.denom())
}

impl IntegerForm {
    fn new(rep: &LinearRepresentation) -> Self {
        let vden = common_den(rep.v.iter());
        let mden = common_den(rep.matrices.iter().flatten().flatten());
        let wden = common_den(rep.w.iter());
        let matrices = [0, 1].map(|d| {
            rep.matrices[d]
                .iter()
                .map(|row| row.iter().map(|x| scale(x, &mden)).collect())
                .collect()
        });
        Self {
            v: ScaledRow {
                num: rep.v.iter().map(|x| scale(x, &vden)).collect(),
                den: vden,
            },
            matrices,
            matrix_den: mden,
            w: rep.w.iter().map(|x| scale(x, &wden)).collect(),
            w_den: wden,
        }
    }

    fn step(&self, row: &ScaledRow, digit: usize) -> ScaledRow {
        let m = &self.matrices[digit];
        let r = row.num.len();
        let mut out = vec![BigInt::zero(); r];
        for (i, x) in row.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                if !m[i][j].is_zero() {
                    *o += x * &m[i][j];
                }
            }
        }
        ScaledRow {
            num: out,
            den: &row.den * &self.matrix_den,
        }
        .reduce()
    }

    fn finish(&self, row: &ScaledRow) -> BigRational {
        let dot: BigInt = row.num.iter().zip(&self.w).map(|(a, b)| a * b).sum();
        BigRational::new(dot, &row.den * &self.w_den)
    }
}

impl LinearRepresentation {
    pub fn rank(&self) -> usize {
        self.v.len()
    }

    /// `v · M[d1] ⋯ M[dk] · w` as an exact rational.
    pub fn evaluate_digits(&self, digits: &[u8]) -> BigRational {
        let form = IntegerForm::new(self);
        let row = digits
            .iter()
            .fold(form.v.clone(), |row, &d| form.step(&row, d as usize));
        form.finish(&row)
    }

    /// `f(n)` for `n >= 1`, reading the binary expansion of `n` most significant digit first.
    pub fn evaluate(&self, n: u64) -> Result<BigInt> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "f(0) is not defined; orders start at 1".into(),
            ));
        }
        let value = self.evaluate_digits(&binary_digits(n));
        into_integer(n, value)
    }

    /// `f(1..=n_max)`, sharing products along common binary prefixes.
    pub fn evaluate_range(&self, n_max: u64) -> Result<Vec<BigInt>> {
        let form = IntegerForm::new(self);
        let mut out = vec![BigInt::zero(); n_max as usize + 1];
        // depth-first over the binary tree of expansions: children of n are 2n and 2n+1
        let mut stack = vec![(1u64, form.step(&form.v, 1))];
        while let Some((n, row)) = stack.pop() {
            out[n as usize] = into_integer(n, form.finish(&row))?;
            for d in [0u64, 1] {
                let child = 2 * n + d;
                if child <= n_max {
                    stack.push((child, form.step(&row, d as usize)));
                }
            }
        }
        out.remove(0);
        Ok(out)
    }
}

fn into_integer(n: u64, value: BigRational) -> Result<BigInt> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonInteger {
            n,
            value: value.to_string(),
        })
    }
}

/// Binary expansion of `n >= 1`, most significant digit first, no leading zeros.
pub fn binary_digits(n: u64) -> Vec<u8> {
    if n == 0 {
        return Vec::new();
    }
    let bits = 64 - n.leading_zeros();
    (0..bits).rev().map(|b| (n >> b & 1) as u8).collect()
}

pub fn binary_string(n: u64) -> String {
    binary_digits(n)
        .iter()
        .map(|d| char::from(b'0' + d))
        .collect()
}

/// The Thue-Morse abelian-square representation parsed from the shipped data file.
pub fn tm_linear_representation() -> &'static LinearRepresentation {
    static REP: OnceLock<LinearRepresentation> = OnceLock::new();
    REP.get_or_init(|| {
        TM_LINREP_DATA
            .parse()
            .expect("shipped linear representation data parses")
    })
}

/// `f(n)` via the rank-11 linear representation.
pub fn tm_f_linear_rep(n: u64) -> Result<BigInt> {
    tm_linear_representation().evaluate(n)
}

/// Summary of one matrix evaluation, for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinrepTrace {
    pub n: u64,
    pub digits: String,
    pub value: String,
    pub max_abs_numerator: String,
}

pub fn tm_f_linear_rep_traced(n: u64) -> Result<LinrepTrace> {
    let rep = tm_linear_representation();
    let value = rep.evaluate(n)?;
    let form = IntegerForm::new(rep);
    let row = binary_digits(n)
        .iter()
        .fold(form.v.clone(), |row, &d| form.step(&row, d as usize));
    let max = row.num.iter().map(|x| x.abs()).max().unwrap_or_default();
    Ok(LinrepTrace {
        n,
        digits: binary_string(n),
        value: value.to_string(),
        max_abs_numerator: max.to_string(),
    })
}
