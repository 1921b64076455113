use std::fmt;
use std::ops::Sub;

use serde::Serialize;

use super::word::tm_symbol;

/// A multiple of one half, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct HalfInteger {
    pub twice: i64,
}

impl HalfInteger {
    pub const ZERO: HalfInteger = HalfInteger { twice: 0 };

    pub const fn from_twice(twice: i64) -> Self {
        Self { twice }
    }

    pub fn as_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }
}

impl Sub for HalfInteger {
    type Output = HalfInteger;

    fn sub(self, rhs: Self) -> Self {
        HalfInteger {
            twice: self.twice - rhs.twice,
        }
    }
}

impl fmt::Display for HalfInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Prefix defect `d(n)`: zeros in `t[0..n)` minus `n/2`.
///
/// Even-length prefixes are products of `01` and `10` blocks, so `d(2m) = 0`
/// and `d(2m+1)` is `+1/2` or `-1/2` according to `t[2m]`.
pub fn defect(n: u64) -> HalfInteger {
    if n % 2 == 0 {
        HalfInteger::ZERO
    } else if tm_symbol(n - 1) == 0 {
        HalfInteger::from_twice(1)
    } else {
        HalfInteger::from_twice(-1)
    }
}

/// Factor defect `D(i, n) = d(i + n) - d(i)`: zeros in `t[i..i+n)` minus `n/2`.
pub fn factor_defect(i: u64, n: u64) -> HalfInteger {
    defect(i + n) - defect(i)
}

/// Whether `t[i..i+2n)` is an abelian square, decided from factor defects alone.
pub fn tm_is_abelian_square_at(i: u64, n: u64) -> bool {
    n >= 1 && factor_defect(i, n) == factor_defect(i + n, n)
}
