//! Counting distinct and inequivalent abelian-square factors.

mod density;
mod random;
mod search;
mod spectrum;
mod stability;

pub use density::{density_report, AverageRow, DensityReport, DensityRow};
pub use random::{
    exhaustive_mean_total, fit_slope, random_word_statistic, RandomRow, RandomStatReport,
};
pub use search::{
    inequivalent_probe, max_as_search, InequivalentProbe, InequivalentRow, SearchResult,
    DEFAULT_SEARCH_BUDGET, MAX_SEARCH_LEN,
};
pub use spectrum::{
    inequivalent_spectrum, per_factor_average, per_factor_stats, spectrum, spectrum_up_to,
    square_count_at, PerFactorStats, SquareSpectrum,
};
pub use stability::{
    stabilize, ConstantSource, FnSource, PrefixSource, StabilityCertificate, StabilityConfig,
};
