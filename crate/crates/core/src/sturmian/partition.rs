//! The partition of `[0, 1)` by the points `{-iα}` and the abelian squares it encodes.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

use super::certified::{CertifiedReal, LinearForm};
use super::rotation::{letters_of_multiples, A};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Weight {
    Light,
    Heavy,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PartitionInterval {
    /// `L_index`, numbered left to right.
    pub index: usize,
    /// `i` with left endpoint `{-iα}`, or `0` for the endpoint `0`.
    pub left_point: usize,
    pub lo: LinearForm,
    pub hi: LinearForm,
    pub lo_preview: f64,
    pub hi_preview: f64,
    pub factor: String,
    pub weight: Weight,
    /// Number of `a`s in the factor.
    pub a_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntervalPartition {
    pub n: usize,
    pub intervals: Vec<PartitionInterval>,
}

/// `{-iα}` as a form.
fn neg_frac(alpha: &CertifiedReal, i: usize) -> Result<LinearForm> {
    alpha.frac_multiple(-(i as i128))
}

/// Indices `1..=n` sorted by `{-iα}`.
fn sorted_points(alpha: &CertifiedReal, n: usize) -> Result<(Vec<usize>, Vec<LinearForm>)> {
    let forms: Vec<LinearForm> = (0..=n).map(|i| neg_frac(alpha, i)).collect::<Result<_>>()?;
    let mut order: Vec<usize> = (1..=n).collect();
    let mut err = None;
    order.sort_by(|&i, &j| match alpha.cmp_forms(forms[i], forms[j]) {
        Ok(o) => o,
        Err(e) => {
            err.get_or_insert(e);
            Ordering::Equal
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok((order, forms)),
    }
}

/// Partition of `[0, 1)` into the `n + 1` intervals cut out by `{-α}, ..., {-nα}`,
/// each labelled with the length-`n` factor coding its points.
pub fn interval_partition(alpha: &CertifiedReal, n: usize) -> Result<IntervalPartition> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "interval partition needs n >= 1".into(),
        ));
    }
    let (order, forms) = sorted_points(alpha, n)?;
    // letters of {jα} for j in -n..n; the factor of the point {-iα} reads j = -i .. -i + n
    let letters = letters_of_multiples(alpha, -(n as i128), n as i128)?;
    let threshold = forms[n];
    let mut left_points = vec![0usize];
    left_points.extend(&order);
    let mut intervals = Vec::with_capacity(n + 1);
    for (index, &i) in left_points.iter().enumerate() {
        let lo = if i == 0 {
            LinearForm::integer(0)
        } else {
            forms[i]
        };
        let hi = left_points
            .get(index + 1)
            .map_or(LinearForm::integer(1), |&j| forms[j]);
        let start = n - i;
        let symbols = letters[start..start + n].to_vec();
        let a_count = symbols.iter().filter(|&&c| c == A).count();
        let weight = if i != 0 && alpha.cmp_forms(lo, threshold)? != Ordering::Less {
            Weight::Heavy
        } else {
            Weight::Light
        };
        intervals.push(PartitionInterval {
            index,
            left_point: i,
            lo,
            hi,
            lo_preview: alpha.preview(lo),
            hi_preview: alpha.preview(hi),
            factor: Word::new(Alphabet::binary(), symbols)?.to_string(),
            weight,
            a_count,
        });
    }
    Ok(IntervalPartition { n, intervals })
}

/// Tag of interval `L_i(n)`.
pub fn heavy_light(alpha: &CertifiedReal, n: usize, i: usize) -> Result<Weight> {
    if i > n {
        return Err(Error::InvalidArgument(format!(
            "interval index {i} exceeds n = {n}"
        )));
    }
    if i == 0 {
        return Ok(Weight::Light);
    }
    let (order, forms) = sorted_points(alpha, n)?;
    let lo = forms[order[i - 1]];
    Ok(if alpha.cmp_forms(lo, forms[n])? == Ordering::Less {
        Weight::Light
    } else {
        Weight::Heavy
    })
}

/// Whether `⌊nα⌋` is odd, decided by comparing `{nα/2}` with `1/2`.
pub fn floor_is_odd(alpha: &CertifiedReal, n: i128) -> Result<bool> {
    let half = alpha.frac(LinearForm::new(0, n, 2))?;
    Ok(alpha.cmp_forms(half, LinearForm::new(1, 0, 2))? != Ordering::Less)
}

/// Number of distinct abelian squares of length `n` in the characteristic word of slope `α`,
/// counted on the points `{-iα}`, `1 <= i <= n`, against `{-nα}`.
pub fn sturmian_as_count(alpha: &CertifiedReal, n: usize) -> Result<u64> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::InvalidArgument(format!(
            "abelian-square count needs even n >= 2, got {n}"
        )));
    }
    let odd = floor_is_odd(alpha, n as i128)?;
    let threshold = neg_frac(alpha, n)?;
    let mut count = 0u64;
    for i in 1..=n {
        let x = neg_frac(alpha, i)?;
        let o = alpha.cmp_forms(x, threshold)?;
        let hit = if odd {
            o != Ordering::Less
        } else {
            o != Ordering::Greater
        };
        count += hit as u64;
    }
    Ok(count)
}

/// `sturmian_as_count` for every even length `2..=n_max`, in parallel.
pub fn sturmian_as_counts(alpha: &CertifiedReal, n_max: usize) -> Result<Vec<(usize, u64)>> {
    use rayon::prelude::*;
    (1..=n_max / 2)
        .into_par_iter()
        .map(|h| Ok((2 * h, sturmian_as_count(alpha, 2 * h)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sturmian::ContinuedFraction;
    use crate::words::{parikh, Word};

    fn golden() -> CertifiedReal {
        CertifiedReal::new(ContinuedFraction::golden())
    }

    #[test]
    fn fibonacci_partition_of_six() {
        let p = interval_partition(&golden(), 6).unwrap();
        let factors: Vec<&str> = p.intervals.iter().map(|i| i.factor.as_str()).collect();
        assert_eq!(
            factors,
            ["babaab", "baabab", "baabaa", "ababaa", "abaaba", "aababa", "aabaab"]
        );
        let weights: Vec<Weight> = p.intervals.iter().map(|i| i.weight).collect();
        assert_eq!(weights[..2], [Weight::Light, Weight::Light]);
        assert!(weights[2..].iter().all(|&w| w == Weight::Heavy));
        assert!((p.intervals[0].hi_preview - 0.146).abs() < 1e-3);
        assert_eq!(heavy_light(&golden(), 6, 0).unwrap(), Weight::Light);
        assert_eq!(heavy_light(&golden(), 6, 4).unwrap(), Weight::Heavy);
        assert_eq!(p.intervals[0].a_count, 3);
        assert_eq!(p.intervals[4].a_count, 4);
    }

    #[test]
    fn length_one() {
        let p = interval_partition(&golden(), 1).unwrap();
        let mut f: Vec<&str> = p.intervals.iter().map(|i| i.factor.as_str()).collect();
        f.sort();
        assert_eq!(f, ["a", "b"]);
        assert!(interval_partition(&golden(), 0).is_err());
    }

    #[test]
    fn counting_examples() {
        let a = golden();
        assert_eq!(sturmian_as_count(&a, 6).unwrap(), 5);
        assert_eq!(sturmian_as_count(&a, 8).unwrap(), 1);
        let table: Vec<u64> = (1..=18)
            .map(|h| sturmian_as_count(&a, 2 * h).unwrap())
            .collect();
        assert_eq!(
            table,
            [1, 3, 5, 1, 9, 5, 5, 15, 3, 13, 13, 5, 25, 9, 15, 25, 1, 27]
        );
        assert!(sturmian_as_count(&a, 7).is_err());
        assert!(sturmian_as_count(&a, 0).is_err());
    }

    #[test]
    fn parity_test_matches_floor() {
        for cf in [ContinuedFraction::golden(), ContinuedFraction::silver()] {
            let a = CertifiedReal::new(cf);
            for n in 1..300 {
                assert_eq!(
                    floor_is_odd(&a, n).unwrap(),
                    a.floor_multiple(n).unwrap() % 2 == 1
                );
            }
        }
    }

    #[test]
    fn partition_invariants() {
        for cf in ["[0; | 1]", "[0; | 2]", "[0; 1 | 2, 1]", "[0; | 3, 1]"] {
            let a = CertifiedReal::new(cf.parse().unwrap());
            for n in 1..=60 {
                let p = interval_partition(&a, n).unwrap();
                assert_eq!(p.intervals.len(), n + 1);
                let distinct: std::collections::BTreeSet<&str> =
                    p.intervals.iter().map(|i| i.factor.as_str()).collect();
                assert_eq!(distinct.len(), n + 1);
                for w in p.intervals.windows(2) {
                    assert_eq!(w[0].hi, w[1].lo);
                    assert_eq!(a.cmp_forms(w[0].lo, w[0].hi).unwrap(), Ordering::Less);
                }
                let lfloor = a.floor_multiple(n as i128).unwrap() as usize;
                for iv in &p.intervals {
                    let w = Word::parse(&iv.factor, Alphabet::binary()).unwrap();
                    let pv = parikh(&w);
                    let expected = match iv.weight {
                        Weight::Light => lfloor,
                        Weight::Heavy => lfloor + 1,
                    };
                    assert_eq!(pv.0[0], expected, "{cf} n={n} {}", iv.factor);
                }
            }
        }
    }
}
