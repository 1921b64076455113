//! Sturmian words as codings of the rotation by `α`.

use std::cmp::Ordering;
use std::sync::Arc;

use serde::Serialize;

use crate::count::PrefixSource;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

use super::certified::{CertifiedReal, LinearForm};
use super::cf::ContinuedFraction;

/// Letter `b` is coded by `[0, 1-α)` (closed on the left) or by `(0, 1-α]` (closed on the right).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    #[default]
    ClosedLeft,
    ClosedRight,
}

pub const A: u8 = 0;
pub const B: u8 = 1;

#[derive(Clone, Debug)]
pub struct SturmianSpec {
    pub alpha: Arc<CertifiedReal>,
    /// Initial point `ρ`, as a linear form in `α`.
    pub rho: LinearForm,
    pub convention: Convention,
}

impl SturmianSpec {
    pub fn new(alpha: CertifiedReal, rho: LinearForm, convention: Convention) -> Result<Self> {
        let cf = alpha.cf();
        if cf.a0 != 0 || cf.quotient(1).is_none() {
            return Err(Error::InvalidArgument(format!(
                "α = {cf} must lie strictly between 0 and 1"
            )));
        }
        if rho.d <= 0 {
            return Err(Error::InvalidArgument(
                "initial point needs a positive denominator".into(),
            ));
        }
        Ok(Self {
            alpha: Arc::new(alpha),
            rho,
            convention,
        })
    }

    /// The characteristic word `s_{α,α}`.
    pub fn characteristic(cf: ContinuedFraction) -> Result<Self> {
        Self::new(
            CertifiedReal::new(cf),
            LinearForm::alpha_times(1),
            Convention::ClosedLeft,
        )
    }

    /// The Fibonacci word `s_{φ-1, φ-1}`.
    pub fn fibonacci() -> Self {
        Self::characteristic(ContinuedFraction::golden())
            .expect("golden ratio conjugate lies in (0, 1)")
    }

    pub fn with_rho(mut self, rho: LinearForm) -> Self {
        self.rho = rho;
        self
    }

    pub fn with_convention(mut self, convention: Convention) -> Self {
        self.convention = convention;
        self
    }

    /// Letter coding the point `x` under this convention.
    pub fn letter_at(&self, x: LinearForm) -> Result<u8> {
        let alpha = &self.alpha;
        let y = alpha.frac(x)?;
        // compare {x} with 1 - α
        let side = alpha.cmp_forms(y, LinearForm::new(1, -1, 1))?;
        let is_b = match self.convention {
            Convention::ClosedLeft => side == Ordering::Less,
            Convention::ClosedRight => {
                side != Ordering::Greater && alpha.sign(y)? == Ordering::Greater
            }
        };
        Ok(if is_b { B } else { A })
    }

    /// `ρ + kα`.
    pub fn point(&self, k: i128) -> LinearForm {
        LinearForm::new(self.rho.c, self.rho.s + k * self.rho.d, self.rho.d)
    }

    pub fn name(&self) -> String {
        let conv = match self.convention {
            Convention::ClosedLeft => "s",
            Convention::ClosedRight => "s'",
        };
        format!("sturmian {conv} α={} ρ={}", self.alpha.cf(), self.rho)
    }
}

/// First `n` letters of the rotation word: letter `k` codes `{ρ + kα}`.
pub fn sturmian_prefix(spec: &SturmianSpec, n: usize) -> Result<Word> {
    let symbols = (0..n as i128)
        .map(|k| spec.letter_at(spec.point(k)))
        .collect::<Result<Vec<u8>>>()?;
    Word::new(Alphabet::binary(), symbols)
}

pub fn fibonacci_prefix(n: usize) -> Word {
    sturmian_prefix(&SturmianSpec::fibonacci(), n).expect("periodic expansion never runs out")
}

/// `letter(j)` for `j` in `lo..hi`: the letter coding `{jα}` under the closed-left convention.
pub(crate) fn letters_of_multiples(alpha: &CertifiedReal, lo: i128, hi: i128) -> Result<Vec<u8>> {
    let one_minus = LinearForm::new(1, -1, 1);
    (lo..hi)
        .map(|j| {
            let y = alpha.frac_multiple(j)?;
            Ok(if alpha.cmp_forms(y, one_minus)? == Ordering::Less {
                B
            } else {
                A
            })
        })
        .collect()
}

#[derive(Clone)]
pub struct SturmianSource {
    pub spec: SturmianSpec,
}

impl SturmianSource {
    pub fn new(spec: SturmianSpec) -> Self {
        Self { spec }
    }

    pub fn fibonacci() -> Self {
        Self::new(SturmianSpec::fibonacci())
    }
}

impl PrefixSource for SturmianSource {
    fn name(&self) -> String {
        self.spec.name()
    }

    fn prefix(&self, len: usize) -> Result<Word> {
        sturmian_prefix(&self.spec, len)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::is_balanced;

    #[test]
    fn fibonacci_word() {
        assert_eq!(fibonacci_prefix(15).to_string(), "abaababaabaabab");
        assert!(fibonacci_prefix(0).is_empty());
    }

    #[test]
    fn fibonacci_is_fixed_by_its_morphism() {
        let f = fibonacci_prefix(400);
        let image: Vec<u8> = f
            .symbols()
            .iter()
            .flat_map(|&c| if c == A { vec![A, B] } else { vec![A] })
            .collect();
        assert_eq!(&image[..400], f.symbols());
    }

    #[test]
    fn zero_intercept_identities() {
        for cf in [
            ContinuedFraction::golden(),
            ContinuedFraction::silver(),
            "[0; | 1, 2]".parse().unwrap(),
        ] {
            let s = SturmianSpec::characteristic(cf).unwrap();
            let tail = sturmian_prefix(&s, 200).unwrap();
            let zero = s.clone().with_rho(LinearForm::integer(0));
            let left = sturmian_prefix(&zero, 201).unwrap();
            let right =
                sturmian_prefix(&zero.with_convention(Convention::ClosedRight), 201).unwrap();
            assert_eq!(left.symbols()[0], B);
            assert_eq!(right.symbols()[0], A);
            assert_eq!(&left.symbols()[1..], tail.symbols());
            assert_eq!(&right.symbols()[1..], tail.symbols());
        }
    }

    #[test]
    fn prefixes_are_balanced() {
        for cf in [
            "[0; | 1]",
            "[0; | 2]",
            "[0; 1 | 2, 1]",
            "[0; 3, 1, 4, 1, 5, 9, 2, 6, 5]",
        ] {
            let s = SturmianSpec::characteristic(cf.parse().unwrap()).unwrap();
            let w = sturmian_prefix(&s, 300).unwrap();
            assert!(is_balanced(&w).unwrap(), "{cf}");
        }
    }

    #[test]
    fn rejects_alpha_outside_unit_interval() {
        let cf: ContinuedFraction = "[1; | 1]".parse().unwrap();
        assert!(SturmianSpec::characteristic(cf).is_err());
    }

    #[test]
    fn letters_match_float_coding() {
        let a = CertifiedReal::new(ContinuedFraction::golden());
        let phi1 = 0.618_033_988_749_894_8f64;
        let letters = letters_of_multiples(&a, -50, 50).unwrap();
        for (k, &l) in (-50i32..50).zip(&letters) {
            let y = (k as f64 * phi1).rem_euclid(1.0);
            assert_eq!(l == B, y < 1.0 - phi1, "j = {k}");
        }
    }
}
