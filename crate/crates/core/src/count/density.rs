use serde::Serialize;

use crate::error::Result;
use crate::words::DedupEngine;

use super::spectrum::{per_factor_stats, spectrum_up_to, SquareSpectrum};
use super::stability::{stabilize, PrefixSource, StabilityCertificate, StabilityConfig};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityRow {
    pub n: usize,
    /// Sum of distinct abelian-square counts over all lengths `<= n`.
    pub cumulative: u64,
    /// `cumulative / n^2`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AverageRow {
    pub n: usize,
    pub factors: usize,
    pub mean: f64,
    pub min: u64,
    /// `mean / n^2`.
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub source: String,
    pub rows: Vec<DensityRow>,
    pub averages: Vec<AverageRow>,
    pub stability: Option<StabilityCertificate>,
}

impl DensityReport {
    /// Builds cumulative rows for `n = 1..=n_max` from per-length counts.
    pub fn from_counts(
        source: impl Into<String>,
        n_max: usize,
        count_at: impl Fn(usize) -> u64,
    ) -> Self {
        let mut cumulative = 0u64;
        let rows = (1..=n_max)
            .map(|n| {
                cumulative += count_at(n);
                DensityRow {
                    n,
                    cumulative,
                    ratio: cumulative as f64 / (n as f64 * n as f64),
                }
            })
            .collect();
        Self {
            source: source.into(),
            rows,
            averages: Vec::new(),
            stability: None,
        }
    }

    pub fn from_spectrum(
        source: impl Into<String>,
        n_max: usize,
        spectrum: &SquareSpectrum,
    ) -> Self {
        Self::from_counts(source, n_max, |m| spectrum.at(m))
    }

    pub fn cumulative_at(&self, n: usize) -> Option<u64> {
        self.rows.get(n.checked_sub(1)?).map(|r| r.cumulative)
    }

    pub fn ratio_at(&self, n: usize) -> Option<f64> {
        self.rows.get(n.checked_sub(1)?).map(|r| r.ratio)
    }
}

/// Cumulative distinct abelian-square counts of an infinite word up to `n_max`,
/// certified by prefix doubling, plus per-factor averages at `average_lengths`.
pub fn density_report(
    source: &dyn PrefixSource,
    n_max: usize,
    average_lengths: &[usize],
    cfg: StabilityConfig,
) -> Result<DensityReport> {
    let (counts, cert) = stabilize(source, n_max, cfg, |w| {
        spectrum_up_to(w, n_max, DedupEngine::default()).counts
    })?;
    let spectrum = SquareSpectrum::from_counts(cert.prefix_len, counts);
    let mut report = DensityReport::from_spectrum(source.name(), n_max, &spectrum);
    report.stability = Some(cert);
    for &n in average_lengths {
        let (stats, _) = stabilize(source, n, cfg, |w| per_factor_stats(w, n).map(|s| s.totals))?;
        let stats = super::spectrum::PerFactorStats {
            len: n,
            totals: stats?,
        };
        let mean = stats.mean();
        report.averages.push(AverageRow {
            n,
            factors: stats.totals.len(),
            mean,
            min: stats.min(),
            ratio: mean / (n as f64 * n as f64),
        });
    }
    Ok(report)
}
