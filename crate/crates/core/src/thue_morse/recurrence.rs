//! Linear recurrence systems `f(M n + r) = sum c f(A n + B)`, their validation and evaluation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

pub const TM_RECURRENCE_DATA: &str = include_str!("../../data/tm_recurrences_v1.txt");

/// Argument `mult * n + offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Affine {
    pub mult: u64,
    pub offset: u64,
}

impl Affine {
    pub fn at(self, n: u64) -> u64 {
        self.mult * n + self.offset
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.mult, self.offset) {
            (0, b) => write!(f, "{b}"),
            (1, 0) => write!(f, "n"),
            (1, b) => write!(f, "n+{b}"),
            (a, 0) => write!(f, "{a}n"),
            (a, b) => write!(f, "{a}n+{b}"),
        }
    }
}

impl FromStr for Affine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad argument {s:?}, expected An+B"));
        let (lin, off) = match s.split_once('+') {
            Some((l, o)) => (l, o.parse::<u64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let mult = match lin.strip_suffix('n') {
            Some("") => 1,
            Some(a) => a.parse::<u64>().map_err(|_| bad())?,
            None => return Err(bad()),
        };
        Ok(Affine { mult, offset: off })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficient {
    Known(#[serde(serialize_with = "ser_rational")] BigRational),
    /// Written without a sign; only the magnitude is known.
    UnknownSign(#[serde(serialize_with = "ser_rational")] BigRational),
}

fn ser_rational<S: serde::Serializer>(
    r: &BigRational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Term {
    pub coefficient: Coefficient,
    pub arg: Affine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rule {
    pub lhs: Affine,
    pub terms: Vec<Term>,
}

fn fmt_coefficient(c: &BigRational, first: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mag = c.abs();
    match (first, c.is_negative()) {
        (true, true) => write!(f, "-")?,
        (true, false) => {}
        (false, true) => write!(f, " - ")?,
        (false, false) => write!(f, " + ")?,
    }
    if !mag.is_one() {
        write!(f, "{mag} ")?;
    }
    Ok(())
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f({}) =", self.lhs)?;
        for (k, t) in self.terms.iter().enumerate() {
            match &t.coefficient {
                Coefficient::Known(c) => {
                    if k == 0 {
                        write!(f, " ")?;
                    }
                    fmt_coefficient(c, k == 0, f)?;
                }
                Coefficient::UnknownSign(m) => write!(f, " ?{m} ")?,
            }
            write!(f, "f({})", t.arg)?;
        }
        Ok(())
    }
}

fn parse_f(token: &str) -> Option<Result<Affine>> {
    let inner = token.strip_prefix("f(")?.strip_suffix(')')?;
    Some(inner.parse())
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("missing '=' in {line:?}")))?;
        let lhs = parse_f(lhs.trim())
            .ok_or_else(|| Error::Parse(format!("bad left side in {line:?}")))??;
        let mut terms = Vec::new();
        // sign: Some(+1/-1) after an operator, None when no operator separates two terms
        let mut sign: Option<i32> = Some(1);
        let mut coeff: Option<BigRational> = None;
        for tok in rhs.split_whitespace() {
            match tok {
                "+" | "-" if coeff.is_none() => {
                    sign = Some(if tok == "+" { 1 } else { -1 });
                    continue;
                }
                _ => {}
            }
            let (neg, body) = match tok.strip_prefix('-') {
                Some(rest) if coeff.is_none() => (true, rest),
                _ => (false, tok),
            };
            if neg {
                sign = Some(-sign.unwrap_or(1));
            }
            if let Some(arg) = parse_f(body) {
                let mag = coeff.take().unwrap_or_else(BigRational::one);
                let coefficient = match sign {
                    Some(s) if s < 0 => Coefficient::Known(-mag),
                    Some(_) => Coefficient::Known(mag),
                    None => Coefficient::UnknownSign(mag),
                };
                terms.push(Term {
                    coefficient,
                    arg: arg?,
                });
                sign = None;
            } else {
                let c = BigRational::from_str(body)
                    .map_err(|_| Error::Parse(format!("bad token {tok:?} in {line:?}")))?;
                if coeff.replace(c).is_some() {
                    return Err(Error::Parse(format!(
                        "two coefficients in a row in {line:?}"
                    )));
                }
            }
        }
        if coeff.is_some() || terms.is_empty() {
            return Err(Error::Parse(format!(
                "dangling coefficient or empty right side in {line:?}"
            )));
        }
        Ok(Rule { lhs, terms })
    }
}

impl Rule {
    pub fn has_unknown(&self) -> bool {
        self.terms
            .iter()
            .any(|t| matches!(t.coefficient, Coefficient::UnknownSign(_)))
    }

    /// Right side at instance `n`, or `None` if some coefficient is still unknown.
    fn rhs(&self, n: u64, f: &mut dyn FnMut(u64) -> Result<BigInt>) -> Result<Option<BigRational>> {
        let mut acc = BigRational::zero();
        for t in &self.terms {
            match &t.coefficient {
                Coefficient::Known(c) => acc += c * BigRational::from_integer(f(t.arg.at(n))?),
                Coefficient::UnknownSign(_) => return Ok(None),
            }
        }
        Ok(Some(acc))
    }

    fn holds_on(
        &self,
        instances: &[u64],
        f: &mut dyn FnMut(u64) -> Result<BigInt>,
    ) -> Result<Vec<u64>> {
        let mut failures = Vec::new();
        for &n in instances {
            let lhs = BigRational::from_integer(f(self.lhs.at(n))?);
            if self.rhs(n, f)? != Some(lhs) {
                failures.push(n);
            }
        }
        Ok(failures)
    }

    /// Solves for the coefficient of term `k` (treated as unknown) from the first
    /// instance where that term is nonzero, then checks every instance.
    fn solve_term(
        &self,
        k: usize,
        instances: &[u64],
        f: &mut dyn FnMut(u64) -> Result<BigInt>,
    ) -> Result<Option<Rule>> {
        let mut probe = self.clone();
        probe.terms[k].coefficient = Coefficient::Known(BigRational::zero());
        for &n in instances {
            let value = f(probe.terms[k].arg.at(n))?;
            if value.is_zero() {
                continue;
            }
            let Some(rest) = probe.rhs(n, f)? else {
                return Ok(None);
            };
            let lhs = BigRational::from_integer(f(probe.lhs.at(n))?);
            let c = (lhs - rest) / BigRational::from_integer(value);
            probe.terms[k].coefficient = Coefficient::Known(c);
            return Ok(probe.holds_on(instances, f)?.is_empty().then_some(probe));
        }
        Ok(None)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecurrenceSystem {
    pub rules: Vec<Rule>,
    /// Fixed values used before any rule applies.
    #[serde(skip)]
    pub base: BTreeMap<u64, BigInt>,
}

impl FromStr for RecurrenceSystem {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut rules = Vec::new();
        let mut format_seen = false;
        for line in text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
        {
            if let Some(fmt) = line.strip_prefix("format ") {
                if fmt.trim() != "abelsq-recurrences" {
                    return Err(Error::Parse(format!("unknown format {fmt:?}")));
                }
                format_seen = true;
            } else if line.starts_with("version ") {
                continue;
            } else {
                rules.push(line.parse()?);
            }
        }
        if !format_seen {
            return Err(Error::Parse("missing format line".into()));
        }
        Ok(Self {
            rules,
            base: BTreeMap::new(),
        })
    }
}

/// Outcome of checking one rule.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RuleStatus {
    Valid,
    /// A term written without an operator; its signed coefficient was solved for.
    SignResolved {
        term: usize,
        #[serde(serialize_with = "ser_rational")]
        coefficient: BigRational,
    },
    /// The rule as written fails; exactly one single change makes it hold.
    Repaired {
        change: String,
        failures_before: Vec<u64>,
    },
    /// Fails, and no unique single change fixes it.
    Invalid {
        failures: Vec<u64>,
        candidates: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleReport {
    pub original: String,
    pub resolved: String,
    #[serde(flatten)]
    pub status: RuleStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub instances: Vec<u64>,
    pub rules: Vec<RuleReport>,
}

impl ValidationReport {
    pub fn trusted(&self) -> bool {
        self.rules
            .iter()
            .all(|r| !matches!(r.status, RuleStatus::Invalid { .. }))
    }
}

impl RecurrenceSystem {
    pub fn with_base(mut self, base: impl IntoIterator<Item = (u64, BigInt)>) -> Self {
        self.base.extend(base);
        self
    }

    /// Residues modulo the largest modulus not covered by exactly one rule.
    pub fn coverage_gaps(&self) -> Vec<(u64, usize)> {
        let modulus = self.rules.iter().map(|r| r.lhs.mult).max().unwrap_or(1);
        (0..modulus)
            .map(|res| {
                (
                    res,
                    self.rules
                        .iter()
                        .filter(|r| r.lhs.mult > 0 && res % r.lhs.mult == r.lhs.offset)
                        .count(),
                )
            })
            .filter(|&(_, c)| c != 1)
            .collect()
    }

    /// Rules with a right-side argument that is not strictly smaller than the left side for some `n >= 1`,
    /// or that can be zero.
    pub fn non_terminating(&self) -> Vec<String> {
        self.rules
            .iter()
            .filter(|r| {
                r.terms.iter().any(|t| {
                    t.arg.mult > r.lhs.mult
                        || t.arg.at(1) >= r.lhs.at(1)
                        || t.arg.at(1) == 0
                        || r.lhs.offset >= r.lhs.mult
                })
            })
            .map(|r| r.to_string())
            .collect()
    }

    pub fn check_structure(&self) -> Result<()> {
        let gaps = self.coverage_gaps();
        if !gaps.is_empty() {
            return Err(Error::Recurrence(format!(
                "residues not covered exactly once: {gaps:?}"
            )));
        }
        let bad = self.non_terminating();
        if !bad.is_empty() {
            return Err(Error::Recurrence(format!(
                "rules without strictly decreasing arguments: {bad:?}"
            )));
        }
        Ok(())
    }

    fn vocabulary(&self) -> BTreeSet<Affine> {
        self.rules
            .iter()
            .flat_map(|r| r.terms.iter().map(|t| t.arg))
            .collect()
    }

    /// Checks each rule against `oracle` on the given instances of `n`.
    ///
    /// Unsigned terms get their coefficient solved for. A failing rule is
    /// repaired only when exactly one single change (one coefficient replaced,
    /// or one term added from the arguments the system already uses) makes it
    /// hold on every instance.
    pub fn validate(
        &self,
        instances: &[u64],
        oracle: &mut dyn FnMut(u64) -> Result<BigInt>,
    ) -> Result<(RecurrenceSystem, ValidationReport)> {
        self.check_structure()?;
        let vocab = self.vocabulary();
        let mut out = self.clone();
        let mut reports = Vec::new();
        for (idx, rule) in self.rules.iter().enumerate() {
            let original = rule.to_string();
            let (resolved, status) = if let Some(k) = rule
                .terms
                .iter()
                .position(|t| matches!(t.coefficient, Coefficient::UnknownSign(_)))
            {
                if rule
                    .terms
                    .iter()
                    .filter(|t| matches!(t.coefficient, Coefficient::UnknownSign(_)))
                    .count()
                    > 1
                {
                    return Err(Error::Recurrence(format!(
                        "more than one unsigned term in {original}"
                    )));
                }
                match rule.solve_term(k, instances, oracle)? {
                    Some(fixed) => {
                        let Coefficient::Known(c) = fixed.terms[k].coefficient.clone() else {
                            unreachable!()
                        };
                        (
                            fixed,
                            RuleStatus::SignResolved {
                                term: k,
                                coefficient: c,
                            },
                        )
                    }
                    None => (
                        rule.clone(),
                        RuleStatus::Invalid {
                            failures: instances.to_vec(),
                            candidates: 0,
                        },
                    ),
                }
            } else {
                let failures = rule.holds_on(instances, oracle)?;
                if failures.is_empty() {
                    (rule.clone(), RuleStatus::Valid)
                } else {
                    let mut candidates: Vec<(Rule, String)> = Vec::new();
                    for k in 0..rule.terms.len() {
                        if let Some(fixed) = rule.solve_term(k, instances, oracle)? {
                            let change = format!(
                                "coefficient of f({}) changed to {}",
                                rule.terms[k].arg,
                                coeff_str(&fixed.terms[k])
                            );
                            candidates.push((fixed, change));
                        }
                    }
                    for &arg in &vocab {
                        let decreasing = arg.mult <= rule.lhs.mult && arg.at(1) < rule.lhs.at(1);
                        if !decreasing || rule.terms.iter().any(|t| t.arg == arg) {
                            continue;
                        }
                        let mut extended = rule.clone();
                        extended.terms.push(Term {
                            coefficient: Coefficient::Known(BigRational::zero()),
                            arg,
                        });
                        let k = extended.terms.len() - 1;
                        if let Some(fixed) = extended.solve_term(k, instances, oracle)? {
                            let change =
                                format!("added term {} f({arg})", coeff_str(&fixed.terms[k]));
                            candidates.push((fixed, change));
                        }
                    }
                    if candidates.len() == 1 {
                        let (fixed, change) = candidates.pop().unwrap();
                        (
                            fixed,
                            RuleStatus::Repaired {
                                change,
                                failures_before: failures,
                            },
                        )
                    } else {
                        (
                            rule.clone(),
                            RuleStatus::Invalid {
                                failures,
                                candidates: candidates.len(),
                            },
                        )
                    }
                }
            };
            out.rules[idx] = resolved.clone();
            reports.push(RuleReport {
                original,
                resolved: resolved.to_string(),
                status,
            });
        }
        Ok((
            out,
            ValidationReport {
                instances: instances.to_vec(),
                rules: reports,
            },
        ))
    }

    fn rule_for(&self, n: u64) -> Option<(&Rule, u64)> {
        self.rules.iter().find_map(|r| {
            (n % r.lhs.mult == r.lhs.offset && n / r.lhs.mult >= 1).then(|| (r, n / r.lhs.mult))
        })
    }

    /// Arguments in `1..=n_max` that are neither base values nor reachable by a rule with `n >= 1`.
    pub fn uncovered_up_to(&self, n_max: u64) -> Vec<u64> {
        (1..=n_max)
            .filter(|n| !self.base.contains_key(n) && self.rule_for(*n).is_none())
            .collect()
    }

    /// `f(1..=n_max)`; arguments not handled by the base table or a rule are taken from `fallback`.
    pub fn evaluate_range(
        &self,
        n_max: u64,
        fallback: &mut dyn FnMut(u64) -> Result<BigInt>,
    ) -> Result<Vec<BigInt>> {
        if self.rules.iter().any(Rule::has_unknown) {
            return Err(Error::Recurrence(
                "system has unresolved coefficients; validate it first".into(),
            ));
        }
        let mut memo: Vec<BigInt> = Vec::with_capacity(n_max as usize + 1);
        memo.push(BigInt::zero());
        for n in 1..=n_max {
            let value = if let Some(v) = self.base.get(&n) {
                v.clone()
            } else if let Some((rule, k)) = self.rule_for(n) {
                let mut lookup = |m: u64| Ok(memo[m as usize].clone());
                let value = rule.rhs(k, &mut lookup)?.expect("resolved coefficients");
                if !value.is_integer() {
                    return Err(Error::Recurrence(format!(
                        "non-integer value {value} at n = {n} from {rule}"
                    )));
                }
                value.to_integer()
            } else {
                fallback(n)?
            };
            memo.push(value);
        }
        memo.remove(0);
        Ok(memo)
    }

    pub fn evaluate(
        &self,
        n: u64,
        fallback: &mut dyn FnMut(u64) -> Result<BigInt>,
    ) -> Result<BigInt> {
        Ok(RecurrenceEvaluator::new(self).value(n, fallback)?.clone())
    }
}

fn coeff_str(t: &Term) -> String {
    match &t.coefficient {
        Coefficient::Known(c) | Coefficient::UnknownSign(c) => c.to_string(),
    }
}

/// Memoized top-down evaluation; touches only the arguments the rules reach.
pub struct RecurrenceEvaluator<'a> {
    system: &'a RecurrenceSystem,
    memo: BTreeMap<u64, BigInt>,
}

impl<'a> RecurrenceEvaluator<'a> {
    pub fn new(system: &'a RecurrenceSystem) -> Self {
        Self {
            system,
            memo: BTreeMap::new(),
        }
    }

    pub fn value(
        &mut self,
        n: u64,
        fallback: &mut dyn FnMut(u64) -> Result<BigInt>,
    ) -> Result<&BigInt> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "recurrence orders start at 1".into(),
            ));
        }
        if !self.memo.contains_key(&n) {
            let v = if let Some(v) = self.system.base.get(&n) {
                v.clone()
            } else if let Some((rule, k)) = self.system.rule_for(n) {
                let mut acc = BigRational::zero();
                for t in &rule.terms {
                    let Coefficient::Known(c) = &t.coefficient else {
                        return Err(Error::Recurrence(format!(
                            "unresolved coefficient in {rule}"
                        )));
                    };
                    acc +=
                        c * BigRational::from_integer(self.value(t.arg.at(k), fallback)?.clone());
                }
                if !acc.is_integer() {
                    return Err(Error::Recurrence(format!(
                        "non-integer value {acc} at n = {n} from {rule}"
                    )));
                }
                acc.to_integer()
            } else {
                fallback(n)?
            };
            self.memo.insert(n, v);
        }
        Ok(&self.memo[&n])
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }
}
