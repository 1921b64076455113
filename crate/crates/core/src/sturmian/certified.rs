//! Exact sign decisions for `(c + s·α) / d` with `α` irrational and given by its continued fraction.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::error::{Error, Result};

use super::cf::ContinuedFraction;

pub const DEFAULT_REFINEMENT_CAP: usize = 400;

/// `(c + s·α) / d` with `d > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LinearForm {
    pub c: i128,
    pub s: i128,
    pub d: i128,
}

impl LinearForm {
    pub const fn new(c: i128, s: i128, d: i128) -> Self {
        Self { c, s, d }
    }

    pub const fn integer(c: i128) -> Self {
        Self { c, s: 0, d: 1 }
    }

    /// `k·α`.
    pub const fn alpha_times(k: i128) -> Self {
        Self { c: 0, s: k, d: 1 }
    }

    pub fn minus_integer(self, m: i128) -> Self {
        Self {
            c: self.c - m * self.d,
            ..self
        }
    }

    /// `self - other`, over the product of denominators unless they agree.
    pub fn sub(self, other: Self) -> Self {
        if self.d == other.d {
            Self {
                c: self.c - other.c,
                s: self.s - other.s,
                d: self.d,
            }
        } else {
            Self {
                c: self.c * other.d - other.c * self.d,
                s: self.s * other.d - other.s * self.d,
                d: self.d * other.d,
            }
        }
    }

    pub fn add(self, other: Self) -> Self {
        self.sub(Self {
            c: -other.c,
            s: -other.s,
            d: other.d,
        })
    }

    pub fn at(&self, p: &BigInt, q: &BigInt) -> BigRational {
        BigRational::new(
            BigInt::from(self.c) * q + BigInt::from(self.s) * p,
            BigInt::from(self.d) * q,
        )
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match (self.c, self.s) {
            (c, 0) => format!("{c}"),
            (0, s) => format!("{s}α"),
            (c, s) if s < 0 => format!("{c} - {}α", -s),
            (c, s) => format!("{c} + {s}α"),
        };
        if self.d == 1 {
            write!(f, "{body}")
        } else {
            write!(f, "({body})/{}", self.d)
        }
    }
}

/// A real number known through its convergents; every decision is exact.
///
/// Convergents are computed once up to the refinement cap, so the value is
/// immutable and can be shared across threads.
#[derive(Clone, Debug)]
pub struct CertifiedReal {
    cf: ContinuedFraction,
    pairs: Vec<(BigInt, BigInt)>,
    small: Vec<(i128, i128)>,
    cap: usize,
    approx: f64,
}

impl CertifiedReal {
    pub fn new(cf: ContinuedFraction) -> Self {
        Self::with_cap(cf, DEFAULT_REFINEMENT_CAP)
    }

    /// `cap` bounds the convergent index used for any single decision.
    pub fn with_cap(cf: ContinuedFraction, cap: usize) -> Self {
        let depth = match cf.known_len() {
            Some(len) => (len - 1).min(cap + 1),
            None => cap + 1,
        };
        let pairs = cf
            .convergent_pairs(depth)
            .expect("depth within known quotients");
        let limit = 1i128 << 60;
        let small = pairs
            .iter()
            .map_while(|(p, q)| match (p.to_i128(), q.to_i128()) {
                (Some(p), Some(q)) if p.abs() < limit && q < limit => Some((p, q)),
                _ => None,
            })
            .collect();
        let approx = cf.preview();
        Self {
            cf,
            pairs,
            small,
            cap,
            approx,
        }
    }

    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    /// Enclosure from convergents `k` and `k + 1`, as `(lower, upper)`.
    pub fn enclosure(&self, k: usize) -> Result<(BigRational, BigRational)> {
        self.check_level(k)?;
        let a = BigRational::new(self.pairs[k].0.clone(), self.pairs[k].1.clone());
        let b = BigRational::new(self.pairs[k + 1].0.clone(), self.pairs[k + 1].1.clone());
        Ok(if a < b { (a, b) } else { (b, a) })
    }

    fn check_level(&self, k: usize) -> Result<()> {
        if k + 1 < self.pairs.len() {
            return Ok(());
        }
        match self.cf.known_len() {
            Some(len) if len <= self.cap + 1 => Err(Error::InsufficientQuotients {
                available: len,
                required: k + 2,
            }),
            _ => Err(Error::RefinementCap {
                cap: self.cap,
                reason: format!("convergent {} required", k + 1),
            }),
        }
    }

    fn sign_at(&self, form: &LinearForm, k: usize) -> Ordering {
        if let Some(&(p, q)) = self.small.get(k) {
            if let Some(v) = form
                .c
                .checked_mul(q)
                .and_then(|a| form.s.checked_mul(p).and_then(|b| a.checked_add(b)))
            {
                return v.cmp(&0);
            }
        }
        let (p, q) = &self.pairs[k];
        (BigInt::from(form.c) * q + BigInt::from(form.s) * p)
            .sign()
            .cmp_zero()
    }

    /// Sign of `form` at `α`; exact, since `c + s·α` vanishes only when `c = s = 0`.
    pub fn sign(&self, form: LinearForm) -> Result<Ordering> {
        if form.s == 0 {
            return Ok(form.c.cmp(&0));
        }
        // start once q_k exceeds |s|, where the enclosure width first drops below 1/|s|
        let target = form.s.unsigned_abs();
        let mut k = self.small.partition_point(|&(_, q)| (q as u128) <= target);
        k = k.saturating_sub(1);
        loop {
            self.check_level(k)?;
            let a = self.sign_at(&form, k);
            if a != Ordering::Equal && a == self.sign_at(&form, k + 1) {
                return Ok(a);
            }
            k += 1;
        }
    }

    pub fn cmp_forms(&self, a: LinearForm, b: LinearForm) -> Result<Ordering> {
        self.sign(a.sub(b))
    }

    /// `⌊form⌋`.
    pub fn floor(&self, form: LinearForm) -> Result<i128> {
        if form.s == 0 {
            return Ok(form.c.div_euclid(form.d));
        }
        // at the first convergent with q_k > |s| the rational guess is off by at most one
        let guess = {
            let target = BigInt::from(form.s.unsigned_abs());
            let k = self
                .pairs
                .partition_point(|(_, q)| q <= &target)
                .min(self.pairs.len() - 1);
            let v = form.at(&self.pairs[k].0, &self.pairs[k].1);
            v.floor().to_integer().to_i128().unwrap_or(0)
        };
        let mut m = guess;
        while self.sign(form.minus_integer(m))? == Ordering::Less {
            m -= 1;
        }
        while self.sign(form.minus_integer(m + 1))? != Ordering::Less {
            m += 1;
        }
        Ok(m)
    }

    /// `{form}` as a form: `form - ⌊form⌋`.
    pub fn frac(&self, form: LinearForm) -> Result<LinearForm> {
        Ok(form.minus_integer(self.floor(form)?))
    }

    /// `⌊kα⌋`.
    pub fn floor_multiple(&self, k: i128) -> Result<i128> {
        self.floor(LinearForm::alpha_times(k))
    }

    /// `{kα}` as a form.
    pub fn frac_multiple(&self, k: i128) -> Result<LinearForm> {
        self.frac(LinearForm::alpha_times(k))
    }

    /// Ordering of `{iα}` against `{jα}` for `i != j`.
    pub fn compare_frac(&self, i: i128, j: i128) -> Result<Ordering> {
        if i == j {
            return Err(Error::InvalidArgument("compare_frac needs i != j".into()));
        }
        self.cmp_forms(self.frac_multiple(i)?, self.frac_multiple(j)?)
    }

    /// Rational enclosure of `form` at the tightest available level, with its width.
    pub fn enclose(&self, form: LinearForm) -> (BigRational, BigRational) {
        if self.pairs.len() < 2 {
            let v = form.at(&self.pairs[0].0, &self.pairs[0].1);
            return (v.clone(), v);
        }
        let k = self.pairs.len() - 2;
        let a = form.at(&self.pairs[k].0, &self.pairs[k].1);
        let b = form.at(&self.pairs[k + 1].0, &self.pairs[k + 1].1);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Float evaluation for ordering hints; decisions never rely on it.
    pub fn approx(&self, form: LinearForm) -> f64 {
        (form.c as f64 + form.s as f64 * self.approx) / form.d as f64
    }

    /// Floating preview of a form; for display only.
    pub fn preview(&self, form: LinearForm) -> f64 {
        let (lo, hi) = self.enclose(form);
        ((lo + hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// `compare_frac` on a continued fraction.
pub fn compare_frac(alpha: &CertifiedReal, i: i128, j: i128) -> Result<Ordering> {
    alpha.compare_frac(i, j)
}

trait SignCmp {
    fn cmp_zero(&self) -> Ordering;
}

impl SignCmp for num_bigint::Sign {
    fn cmp_zero(&self) -> Ordering {
        match self {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }
}
