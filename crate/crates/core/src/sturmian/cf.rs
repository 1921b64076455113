//! Simple continued fractions `[a0; a1, a2, ...]`, finite or eventually periodic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ContinuedFraction {
    pub a0: i64,
    /// Partial quotients `a1, a2, ...` before the period (all of them for a finite list).
    pub pre: Vec<u64>,
    /// Repeating block; empty for a finite list, which is read as a prefix of an
    /// irrational expansion that is unknown beyond its last quotient.
    pub period: Vec<u64>,
}

impl ContinuedFraction {
    pub fn periodic(a0: i64, pre: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidArgument(
                "periodic continued fraction needs a nonempty period".into(),
            ));
        }
        Self::checked(a0, pre, period)
    }

    pub fn finite(a0: i64, quotients: Vec<u64>) -> Result<Self> {
        Self::checked(a0, quotients, Vec::new())
    }

    fn checked(a0: i64, pre: Vec<u64>, period: Vec<u64>) -> Result<Self> {
        if pre.iter().chain(&period).any(|&a| a == 0) {
            return Err(Error::InvalidArgument(
                "partial quotients after a0 must be >= 1".into(),
            ));
        }
        Ok(Self { a0, pre, period })
    }

    /// `φ - 1 = [0; 1, 1, 1, ...]`.
    pub fn golden() -> Self {
        Self {
            a0: 0,
            pre: Vec::new(),
            period: vec![1],
        }
    }

    /// `√2 - 1 = [0; 2, 2, 2, ...]`.
    pub fn silver() -> Self {
        Self {
            a0: 0,
            pre: Vec::new(),
            period: vec![2],
        }
    }

    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    /// Number of known quotients including `a0`, or `None` when unbounded.
    pub fn known_len(&self) -> Option<usize> {
        (!self.is_periodic()).then_some(1 + self.pre.len())
    }

    /// `a_i`, or `None` past the end of a finite list.
    pub fn quotient(&self, i: usize) -> Option<i64> {
        if i == 0 {
            return Some(self.a0);
        }
        let j = i - 1;
        if j < self.pre.len() {
            Some(self.pre[j] as i64)
        } else if self.is_periodic() {
            Some(self.period[(j - self.pre.len()) % self.period.len()] as i64)
        } else {
            None
        }
    }

    /// Largest partial quotient among `a1, a2, ...` as far as known; the bound `K`.
    pub fn max_quotient(&self) -> Option<u64> {
        self.pre.iter().chain(&self.period).copied().max()
    }

    /// `(p_j, q_j)` for `j = 0..=k`.
    pub fn convergent_pairs(&self, k: usize) -> Result<Vec<(BigInt, BigInt)>> {
        let mut out = Vec::with_capacity(k + 1);
        let (mut p0, mut q0) = (BigInt::one(), BigInt::zero());
        let (mut p1, mut q1) = (BigInt::from(self.a0), BigInt::one());
        out.push((p1.clone(), q1.clone()));
        for i in 1..=k {
            let a = self.quotient(i).ok_or(Error::InsufficientQuotients {
                available: 1 + self.pre.len(),
                required: k + 1,
            })?;
            let p2 = &p1 * a + &p0;
            let q2 = &q1 * a + &q0;
            (p0, q0, p1, q1) = (p1, q1, p2, q2);
            out.push((p1.clone(), q1.clone()));
        }
        Ok(out)
    }

    /// Convergents `p_j / q_j` for `j = 0..=k`.
    pub fn convergents(&self, k: usize) -> Result<Vec<BigRational>> {
        Ok(self
            .convergent_pairs(k)?
            .into_iter()
            .map(|(p, q)| BigRational::new(p, q))
            .collect())
    }

    /// Floating preview for display; never used in decisions.
    pub fn preview(&self) -> f64 {
        let depth = self.known_len().unwrap_or(40).min(40);
        let mut x = 0.0f64;
        for i in (1..depth).rev() {
            x = 1.0 / (self.quotient(i).unwrap() as f64 + x);
        }
        self.a0 as f64 + x
    }
}

/// `convergents` for a continued fraction.
pub fn convergents(cf: &ContinuedFraction, k: usize) -> Result<Vec<BigRational>> {
    cf.convergents(k)
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        if self.is_periodic() {
            if self.pre.is_empty() {
                write!(f, "[{}; | {}]", self.a0, join(&self.period))
            } else {
                write!(
                    f,
                    "[{}; {} | {}]",
                    self.a0,
                    join(&self.pre),
                    join(&self.period)
                )
            }
        } else {
            write!(f, "[{}; {}]", self.a0, join(&self.pre))
        }
    }
}

impl FromStr for ContinuedFraction {
    type Err = Error;

    /// Accepts `[a0; a1, a2, ...]` and `[a0; pre | period]` (either part of the tail may be empty).
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("continued fraction {s:?}: {why}"));
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| bad("expected [a0; ...]"))?;
        let (head, tail) = inner.split_once(';').ok_or_else(|| bad("missing ';'"))?;
        let a0: i64 = head.trim().parse().map_err(|_| bad("bad a0"))?;
        let list = |t: &str| -> Result<Vec<u64>> {
            t.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| {
                    x.parse::<u64>()
                        .map_err(|_| bad(&format!("bad quotient {x:?}")))
                })
                .collect()
        };
        match tail.split_once('|') {
            Some((pre, period)) => Self::periodic(a0, list(pre)?, list(period)?),
            None => Self::finite(a0, list(tail)?),
        }
    }
}
