use crate::count::{stabilize, PrefixSource, StabilityCertificate, StabilityConfig};
use crate::error::{Error, Result};
use crate::words::{distinct_factors, Alphabet, Word};

/// `t[i]`: parity of the number of ones in the binary expansion of `i`.
#[inline]
pub fn tm_symbol(i: u64) -> u8 {
    (i.count_ones() & 1) as u8
}

/// The first `n` letters of the Thue-Morse word over `{0, 1}`.
pub fn tm_prefix(n: usize) -> Word {
    Word::new(
        Alphabet::binary_digits(),
        (0..n as u64).map(tm_symbol).collect(),
    )
    .expect("binary symbols")
}

pub struct ThueMorseSource;

impl PrefixSource for ThueMorseSource {
    fn name(&self) -> String {
        "thue-morse".into()
    }

    fn prefix(&self, len: usize) -> Result<Word> {
        Ok(tm_prefix(len))
    }
}

/// Prefix length hint for factors of length `m`: every factor of the
/// Thue-Morse word of length `m` occurs in a prefix shorter than `10m`.
pub(crate) fn tm_needed(m: usize) -> usize {
    4 * m.max(1)
}

/// Factor complexity `p_t(n)` by direct enumeration on a certified prefix.
pub fn tm_complexity(n: usize) -> Result<usize> {
    tm_complexity_certified(n, StabilityConfig::default()).map(|(p, _)| p)
}

pub fn tm_complexity_certified(
    n: usize,
    cfg: StabilityConfig,
) -> Result<(usize, StabilityCertificate)> {
    stabilize(&ThueMorseSource, tm_needed(n), cfg, |w| {
        distinct_factors(w, n).map(|f| f.len())
    })
    .and_then(|(p, cert)| Ok((p?, cert)))
}

/// `p_t(n)` from the doubling recurrence `p(2n) = p(n) + p(n+1)`,
/// `p(2n+1) = 2 p(n+1)`, applied for `n >= 2` with `p(0..=3) = 1, 2, 4, 6`.
///
/// The recurrence does not hold at `n = 1` (`p(3) = 6`, not `2 p(2) = 8`).
pub fn tm_complexity_recurrence(n: u64) -> u64 {
    match n {
        0 => 1,
        1 => 2,
        2 => 4,
        3 => 6,
        _ if n % 2 == 0 => tm_complexity_recurrence(n / 2) + tm_complexity_recurrence(n / 2 + 1),
        _ => 2 * tm_complexity_recurrence(n / 2 + 1),
    }
}

/// Distinct length-`n` factors that begin and end with the same letter
/// (`f_aa`) and with different letters (`f_ab`).
pub fn tm_faa_fab(n: usize) -> Result<(usize, usize)> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "f_aa/f_ab need n >= 2, got {n}"
        )));
    }
    let ((aa, ab), _) = stabilize(
        &ThueMorseSource,
        tm_needed(n),
        StabilityConfig::default(),
        |w| {
            let s = w.symbols();
            distinct_factors(w, n).map(|ids| {
                let aa = ids
                    .iter()
                    .filter(|id| s[id.start] == s[id.start + n - 1])
                    .count();
                (aa, ids.len() - aa)
            })
        },
    )
    .and_then(|(r, c)| Ok((r?, c)))?;
    Ok((aa, ab))
}

/// The square of the Thue-Morse morphism, `0 -> 0110`, `1 -> 1001`.
pub fn mu_squared(w: &Word) -> Word {
    const IMG: [[u8; 4]; 2] = [[0, 1, 1, 0], [1, 0, 0, 1]];
    let symbols = w.symbols().iter().flat_map(|&s| IMG[s as usize]).collect();
    Word::with_shared(w.shared_alphabet().clone(), symbols).expect("binary image")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefixes() {
        assert_eq!(tm_prefix(12).to_string(), "011010011001");
        assert_eq!(tm_prefix(24).to_string(), "011010011001011010010110");
        assert!(tm_prefix(0).is_empty());
    }

    #[test]
    fn complexity_values() {
        assert_eq!(tm_complexity(0).unwrap(), 1);
        assert_eq!(tm_complexity(1).unwrap(), 2);
        assert_eq!(tm_complexity(2).unwrap(), 4);
        assert_eq!(tm_complexity(3).unwrap(), 6);
        assert_eq!(tm_complexity(4).unwrap(), 10);
        for n in 2..=150usize {
            let p = tm_complexity(n).unwrap();
            assert_eq!(p as u64, tm_complexity_recurrence(n as u64), "n = {n}");
            assert!(p >= 3 * (n - 1));
        }
        // the recurrence as stated fails at n = 1
        assert_ne!(
            tm_complexity(3).unwrap() as u64,
            2 * tm_complexity_recurrence(2)
        );
    }

    #[test]
    fn faa_fab_values() {
        assert_eq!(tm_faa_fab(2).unwrap(), (2, 2));
        let (aa, ab) = tm_faa_fab(3).unwrap();
        assert_eq!(aa + ab, tm_complexity(3).unwrap());
        assert_eq!((aa, ab), (2, 4));
        assert!(tm_faa_fab(1).is_err());
    }

    #[test]
    fn mu_squared_image() {
        assert_eq!(mu_squared(&tm_prefix(2)).to_string(), "01101001");
        assert_eq!(mu_squared(&tm_prefix(16)), tm_prefix(64));
    }
}
