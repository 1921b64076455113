//! Sturmian words: rotation codings with exact arithmetic in `α`.

mod certified;
mod cf;
mod density;
mod discrepancy;
mod partition;
mod rotation;

pub use certified::{compare_frac, CertifiedReal, LinearForm, DEFAULT_REFINEMENT_CAP};
pub use cf::{convergents, ContinuedFraction};
pub use density::{sturmian_density_check, SturmianDensityCheck, WindowRow};
pub use discrepancy::{
    discrepancy, discrepancy_bound, window_count, window_count_scaled, Discrepancy, Endpoint,
};
pub use partition::{
    floor_is_odd, heavy_light, interval_partition, sturmian_as_count, sturmian_as_counts,
    IntervalPartition, PartitionInterval, Weight,
};
pub use rotation::{fibonacci_prefix, sturmian_prefix, Convention, SturmianSource, SturmianSpec};
