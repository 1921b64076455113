use std::collections::BTreeMap;

use serde::Serialize;

use crate::count::DensityReport;
use crate::error::{Error, Result};

use super::certified::CertifiedReal;
use super::discrepancy::window_count_scaled;
use super::partition::sturmian_as_counts;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WindowRow {
    pub n: usize,
    /// `#{1 <= i <= n : {iα/2} < 1/4}`.
    pub low_quarter: u64,
    /// `#{1 <= m <= n : {mα/2} >= 3/4}`.
    pub high_quarter: u64,
    /// `low_quarter * high_quarter / n^2`.
    pub product_ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SturmianDensityCheck {
    pub report: DensityReport,
    /// Smallest `cumulative / n^2` over `n >= max(2, n_max / 20)`.
    pub min_ratio_tail: f64,
    pub windows: Vec<WindowRow>,
}

/// Cumulative abelian-square counts of the characteristic word of slope `α`,
/// evaluated from the counting formula, with the two quarter-window counts at a ladder of lengths.
pub fn sturmian_density_check(alpha: &CertifiedReal, n_max: usize) -> Result<SturmianDensityCheck> {
    if n_max < 2 {
        return Err(Error::InvalidArgument(
            "density check needs n_max >= 2".into(),
        ));
    }
    if !alpha.cf().is_periodic() {
        return Err(Error::InvalidArgument(
            "density check needs bounded partial quotients, given by an eventually periodic expansion".into(),
        ));
    }
    let counts: BTreeMap<usize, u64> = sturmian_as_counts(alpha, n_max)?.into_iter().collect();
    let report = DensityReport::from_counts(format!("sturmian α={}", alpha.cf()), n_max, |m| {
        counts.get(&m).copied().unwrap_or(0)
    });
    let from = (n_max / 20).max(2);
    let min_ratio_tail = report.rows[from - 1..]
        .iter()
        .map(|r| r.ratio)
        .fold(f64::INFINITY, f64::min);
    let mut ladder = Vec::new();
    let mut n = 16;
    while n < n_max {
        ladder.push(n);
        n *= 2;
    }
    ladder.push(n_max);
    let windows = ladder
        .into_iter()
        .map(|n| {
            let low = window_count_scaled(alpha, 2, (0, 1), (1, 4), 1..=n as i128)?;
            let high = window_count_scaled(alpha, 2, (3, 4), (1, 1), 1..=n as i128)?;
            Ok(WindowRow {
                n,
                low_quarter: low,
                high_quarter: high,
                product_ratio: (low * high) as f64 / (n * n) as f64,
            })
        })
        .collect::<Result<_>>()?;
    Ok(SturmianDensityCheck {
        report,
        min_ratio_tail,
        windows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sturmian::ContinuedFraction;

    #[test]
    fn fibonacci_cumulative() {
        let a = CertifiedReal::new(ContinuedFraction::golden());
        let c = sturmian_density_check(&a, 36).unwrap();
        let cum: Vec<u64> = (1..=18)
            .map(|h| c.report.cumulative_at(2 * h).unwrap())
            .collect();
        assert_eq!(
            cum,
            [1, 4, 9, 10, 19, 24, 29, 44, 47, 60, 73, 78, 103, 112, 127, 152, 153, 180]
        );
        assert!(c.min_ratio_tail > 0.0);
    }

    #[test]
    fn quarter_windows_grow_linearly() {
        let a = CertifiedReal::new(ContinuedFraction::silver());
        let c = sturmian_density_check(&a, 500).unwrap();
        for w in &c.windows {
            assert!(w.low_quarter as f64 >= w.n as f64 / 4.0 - 3.0 * (w.n as f64).ln());
            assert!(w.product_ratio > 0.03);
        }
        let finite: ContinuedFraction = "[0; 1, 1, 1]".parse().unwrap();
        assert!(sturmian_density_check(&CertifiedReal::new(finite), 10).is_err());
    }
}
