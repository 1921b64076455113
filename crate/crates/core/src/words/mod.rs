//! Words, Parikh vectors, factor deduplication and the classical word predicates.

mod alphabet;
mod dedup;
mod parikh;
mod predicates;
mod word;

pub use alphabet::Alphabet;
pub use dedup::{
    lcp_array, suffix_array, DedupEngine, FactorId, FactorIndex, HashIndex, SuffixIndex,
};
pub use parikh::{parikh, ParikhVector, PrefixParikhTable};
pub use predicates::{
    distinct_factors, distinct_factors_with, is_abelian_k_power, is_abelian_square, is_balanced,
    max_power_order, period_and_exponent, right_special_factors, Exponent,
};
pub use word::Word;
