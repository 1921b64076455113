//! The sequence `f(n)`: distinct abelian squares of order `n` (length `2n`) in the Thue-Morse word.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::count::{spectrum_up_to, stabilize, StabilityCertificate, StabilityConfig};
use crate::error::{Error, Result};
use crate::words::DedupEngine;

use super::linrep::{tm_f_linear_rep, tm_linear_representation};
use super::recurrence::{RecurrenceSystem, ValidationReport, TM_RECURRENCE_DATA};
use super::word::{tm_needed, ThueMorseSource};

/// First twenty values, used as the base table of the recurrence system.
pub const TM_F_TABLE: [u64; 20] = [
    2, 4, 4, 10, 8, 24, 10, 22, 12, 36, 20, 52, 24, 54, 20, 46, 24, 72, 32, 76,
];

/// Instances `n = 1..=VALIDATION_INSTANCES` of each rule are checked before the system is used.
pub const VALIDATION_INSTANCES: u64 = 20;

/// `f(1..=n_max)` by counting abelian-square factors on a stability-certified prefix.
pub fn tm_f_bruteforce_table(
    n_max: usize,
    cfg: StabilityConfig,
) -> Result<(Vec<u64>, StabilityCertificate)> {
    if n_max == 0 {
        return Ok((
            Vec::new(),
            StabilityCertificate {
                prefix_len: 0,
                compared_len: 0,
                certified: true,
            },
        ));
    }
    stabilize(&ThueMorseSource, tm_needed(2 * n_max), cfg, |w| {
        let spec = spectrum_up_to(w, 2 * n_max, DedupEngine::RollingHash);
        (1..=n_max).map(|n| spec.at(2 * n)).collect::<Vec<u64>>()
    })
}

pub fn tm_f_bruteforce(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("orders start at 1".into()));
    }
    let n =
        usize::try_from(n).map_err(|_| Error::InvalidArgument(format!("order {n} too large")))?;
    let cfg = StabilityConfig::default();
    let (value, _) = stabilize(&ThueMorseSource, tm_needed(2 * n), cfg, |w| {
        crate::count::square_count_at(w, 2 * n)
    })?;
    Ok(value)
}

/// Rule system after validation against brute-force counts, with its report.
pub struct ValidatedRecurrence {
    pub system: RecurrenceSystem,
    pub report: ValidationReport,
    /// Arguments up to the validation horizon that need the linear representation.
    pub fallback_arguments: Vec<u64>,
}

fn largest_argument(system: &RecurrenceSystem, instances: u64) -> u64 {
    system
        .rules
        .iter()
        .map(|r| r.lhs.at(instances))
        .max()
        .unwrap_or(0)
}

/// Parses the shipped rules and validates each one against brute-force counts.
pub fn validate_tm_recurrences() -> Result<ValidatedRecurrence> {
    let raw: RecurrenceSystem = TM_RECURRENCE_DATA.parse()?;
    let horizon = largest_argument(&raw, VALIDATION_INSTANCES) as usize;
    let (table, _) = tm_f_bruteforce_table(horizon, StabilityConfig::default())?;
    let instances: Vec<u64> = (1..=VALIDATION_INSTANCES).collect();
    let mut oracle = |n: u64| {
        table
            .get(n as usize - 1)
            .map(|&v| BigInt::from(v))
            .ok_or_else(|| Error::Recurrence(format!("oracle has no value for {n}")))
    };
    let (system, report) = raw.validate(&instances, &mut oracle)?;
    if !report.trusted() {
        let bad: Vec<&str> = report
            .rules
            .iter()
            .filter(|r| matches!(r.status, super::recurrence::RuleStatus::Invalid { .. }))
            .map(|r| r.original.as_str())
            .collect();
        return Err(Error::Recurrence(format!(
            "rules failed validation: {bad:?}"
        )));
    }
    let system = system.with_base(
        TM_F_TABLE
            .iter()
            .enumerate()
            .map(|(i, &v)| (i as u64 + 1, BigInt::from(v))),
    );
    let fallback_arguments = system.uncovered_up_to(horizon as u64);
    Ok(ValidatedRecurrence {
        system,
        report,
        fallback_arguments,
    })
}

/// Shared validated system; validation runs once per process.
pub fn tm_recurrence_system() -> Result<&'static ValidatedRecurrence> {
    static SYSTEM: OnceLock<Result<ValidatedRecurrence>> = OnceLock::new();
    SYSTEM
        .get_or_init(validate_tm_recurrences)
        .as_ref()
        .map_err(Clone::clone)
}

/// `f(n)` from the validated recurrence system.
pub fn tm_f_recurrence(n: u64) -> Result<BigInt> {
    let v = tm_recurrence_system()?;
    v.system.evaluate(n, &mut |m| tm_f_linear_rep(m))
}

/// `f(1..=n_max)` from the validated recurrence system.
pub fn tm_f_recurrence_range(n_max: u64) -> Result<Vec<BigInt>> {
    let v = tm_recurrence_system()?;
    v.system.evaluate_range(n_max, &mut |m| tm_f_linear_rep(m))
}

/// `f(1..=n_max)` from the linear representation.
pub fn tm_f_linear_rep_range(n_max: u64) -> Result<Vec<BigInt>> {
    tm_linear_representation().evaluate_range(n_max)
}

/// Closed forms at `4^n - 1` and `3 * 2^n`: `((4^{n+1} - 4) / 3, 14 * 2^n - 4)`.
pub fn tm_f_closed_forms(n: u32) -> Result<(BigInt, BigInt)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "closed forms are stated for n >= 1".into(),
        ));
    }
    let four = BigInt::from(4).pow(n + 1);
    let two = BigInt::from(2).pow(n);
    Ok(((four - 4) / 3, two * 14 - 4))
}

/// The arguments the closed forms describe: `(4^n - 1, 3 * 2^n)`.
pub fn tm_closed_form_arguments(n: u32) -> (u64, u64) {
    (4u64.pow(n) - 1, 3 << n)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremumRow {
    pub n: u64,
    pub f: String,
    pub ratio: f64,
    /// `n = 4^k - 1` for some `k >= 1`.
    pub on_min_family: bool,
    /// `n = 3 * 2^k` for some `k >= 0`.
    pub on_max_family: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremaReport {
    pub n_max: u64,
    /// Each `n` where `f(n)/n` reaches a new or tied running minimum.
    pub running_minima: Vec<ExtremumRow>,
    /// Each `n` where `f(n)/n` reaches a new or tied running maximum.
    pub running_maxima: Vec<ExtremumRow>,
    /// Strict local minima and maxima against both neighbours.
    pub local_minima: Vec<u64>,
    pub local_maxima: Vec<u64>,
}

pub fn is_four_power_minus_one(n: u64) -> bool {
    let m = n + 1;
    m >= 4 && m.is_power_of_two() && m.trailing_zeros() % 2 == 0
}

pub fn is_three_times_power_of_two(n: u64) -> bool {
    n % 3 == 0 && (n / 3).is_power_of_two()
}

/// Running and local extrema of `f(n)/n` over `1..=values.len()`.
pub fn extrema_from_values(values: &[BigInt]) -> ExtremaReport {
    let ratios: Vec<BigRational> = values
        .iter()
        .enumerate()
        .map(|(i, f)| BigRational::new(f.clone(), BigInt::from(i + 1)))
        .collect();
    let row = |i: usize| ExtremumRow {
        n: i as u64 + 1,
        f: values[i].to_string(),
        ratio: ratios[i].to_f64().unwrap_or(f64::NAN),
        on_min_family: is_four_power_minus_one(i as u64 + 1),
        on_max_family: is_three_times_power_of_two(i as u64 + 1),
    };
    let mut running_minima = Vec::new();
    let mut running_maxima = Vec::new();
    let mut lo: Option<&BigRational> = None;
    let mut hi: Option<&BigRational> = None;
    for (i, r) in ratios.iter().enumerate() {
        if lo.map_or(true, |l| r <= l) {
            if lo.is_some_and(|l| r < l) {
                running_minima.clear();
            }
            lo = Some(r);
            running_minima.push(row(i));
        }
        if hi.map_or(true, |h| r >= h) {
            hi = Some(r);
            running_maxima.push(row(i));
        }
    }
    let local = |cmp: fn(&BigRational, &BigRational) -> bool| -> Vec<u64> {
        (1..ratios.len().saturating_sub(1))
            .filter(|&i| cmp(&ratios[i], &ratios[i - 1]) && cmp(&ratios[i], &ratios[i + 1]))
            .map(|i| i as u64 + 1)
            .collect()
    };
    ExtremaReport {
        n_max: values.len() as u64,
        running_minima,
        running_maxima,
        local_minima: local(|a, b| a < b),
        local_maxima: local(|a, b| a > b),
    }
}

/// Extrema of `f(n)/n` for `n <= n_max`, evaluated with the linear representation.
pub fn tm_f_extrema_scan(n_max: u64) -> Result<ExtremaReport> {
    if n_max < 12 {
        return Err(Error::InvalidArgument(format!(
            "extrema scan needs n_max >= 12, got {n_max}"
        )));
    }
    Ok(extrema_from_values(&tm_f_linear_rep_range(n_max)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_by_brute_force() {
        let (t, cert) = tm_f_bruteforce_table(20, StabilityConfig::default()).unwrap();
        assert_eq!(t, TM_F_TABLE.to_vec());
        assert!(cert.certified);
        assert_eq!(tm_f_bruteforce(12).unwrap(), 52);
        assert!(tm_f_bruteforce(0).is_err());
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(
            tm_f_closed_forms(1).unwrap(),
            (BigInt::from(4), BigInt::from(24))
        );
        assert_eq!(
            tm_f_closed_forms(2).unwrap(),
            (BigInt::from(20), BigInt::from(52))
        );
        assert_eq!(
            tm_f_closed_forms(3).unwrap(),
            (BigInt::from(84), BigInt::from(108))
        );
        assert_eq!(tm_closed_form_arguments(3), (63, 24));
    }

    #[test]
    fn families() {
        let mins: Vec<u64> = (1..300).filter(|&n| is_four_power_minus_one(n)).collect();
        assert_eq!(mins, vec![3, 15, 63, 255]);
        let maxs: Vec<u64> = (1..100)
            .filter(|&n| is_three_times_power_of_two(n))
            .collect();
        assert_eq!(maxs, vec![3, 6, 12, 24, 48, 96]);
    }

    #[test]
    fn extrema_on_table_values() {
        let vals: Vec<BigInt> = TM_F_TABLE.iter().map(|&v| BigInt::from(v)).collect();
        let r = extrema_from_values(&vals);
        let mins: Vec<u64> = r.running_minima.iter().map(|m| m.n).collect();
        // 4/3 is attained at 3, 9 and 15; only 3 and 15 lie on the 4^k - 1 family
        assert_eq!(mins, vec![3, 9, 15]);
        let family: Vec<u64> = r
            .running_minima
            .iter()
            .filter(|m| m.on_min_family)
            .map(|m| m.n)
            .collect();
        assert_eq!(family, vec![3, 15]);
        let r12 = extrema_from_values(&vals[..12]);
        assert_eq!(r12.running_maxima.last().unwrap().n, 12);
        assert!(tm_f_extrema_scan(11).is_err());
    }
}
