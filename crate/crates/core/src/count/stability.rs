//! Prefix-doubling stabilization for quantities of infinite words.
//!
//! A quantity computed on the prefix of length `L` is accepted once it agrees
//! with the same quantity on the prefix of length `2L`. The certificate records
//! the smaller of the two agreeing prefix lengths.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::Word;

/// Anything that can produce arbitrarily long prefixes of an infinite word.
pub trait PrefixSource: Sync {
    fn name(&self) -> String;
    fn prefix(&self, len: usize) -> Result<Word>;
}

/// Adapter turning a closure into a [`PrefixSource`].
pub struct FnSource<F> {
    name: String,
    f: F,
}

impl<F> FnSource<F>
where
    F: Fn(usize) -> Result<Word> + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        Self {
            name: name.into(),
            f,
        }
    }
}

impl<F> PrefixSource for FnSource<F>
where
    F: Fn(usize) -> Result<Word> + Sync,
{
    fn name(&self) -> String {
        self.name.clone()
    }

    fn prefix(&self, len: usize) -> Result<Word> {
        (self.f)(len)
    }
}

/// The constant word `aaaa...`.
pub struct ConstantSource;

impl PrefixSource for ConstantSource {
    fn name(&self) -> String {
        "constant".into()
    }

    fn prefix(&self, len: usize) -> Result<Word> {
        Word::new(crate::Alphabet::binary(), vec![0; len])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityConfig {
    /// First prefix length tried; `0` picks a default from the queried length.
    pub initial_len: usize,
    /// Largest prefix length ever materialized.
    pub cap: usize,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        Self {
            initial_len: 0,
            cap: 1 << 22,
        }
    }
}

impl StabilityConfig {
    pub fn with_cap(cap: usize) -> Self {
        Self {
            cap,
            ..Self::default()
        }
    }

    fn start_for(&self, needed: usize) -> usize {
        if self.initial_len > 0 {
            self.initial_len.max(needed)
        } else {
            (4 * needed).max(64).next_power_of_two()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityCertificate {
    /// Prefix length whose value was accepted.
    pub prefix_len: usize,
    /// Prefix length it was compared against (twice `prefix_len`).
    pub compared_len: usize,
    pub certified: bool,
}

/// Evaluates `f` on doubling prefixes until two consecutive values agree.
///
/// `needed` is the smallest prefix length for which `f` is meaningful.
pub fn stabilize<T, F>(
    source: &dyn PrefixSource,
    needed: usize,
    cfg: StabilityConfig,
    f: F,
) -> Result<(T, StabilityCertificate)>
where
    T: PartialEq,
    F: Fn(&Word) -> T,
{
    let mut len = cfg.start_for(needed);
    if 2 * len > cfg.cap {
        return Err(Error::NonStabilized {
            cap: cfg.cap,
            last_prefix: 0,
        });
    }
    let mut current = f(&source.prefix(len)?);
    loop {
        let doubled = 2 * len;
        if doubled > cfg.cap {
            return Err(Error::NonStabilized {
                cap: cfg.cap,
                last_prefix: len,
            });
        }
        let next = f(&source.prefix(doubled)?);
        if next == current {
            return Ok((
                current,
                StabilityCertificate {
                    prefix_len: len,
                    compared_len: doubled,
                    certified: true,
                },
            ));
        }
        current = next;
        len = doubled;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::count::spectrum_up_to;
    use crate::words::DedupEngine;

    #[test]
    fn constant_word_stabilizes() {
        let (counts, cert) = stabilize(&ConstantSource, 20, StabilityConfig::default(), |w| {
            spectrum_up_to(w, 20, DedupEngine::default()).counts
        })
        .unwrap();
        assert!(cert.certified);
        assert_eq!(counts.values().sum::<u64>(), 10);
    }

    #[test]
    fn reports_non_stabilization() {
        // the longest run of a's in a^1 b a^2 b a^4 b ... grows with every doubling
        let runs = FnSource::new("runs", |len| {
            let sym: Vec<u8> = (0..len)
                .map(|i| u8::from((i + 2).is_power_of_two()))
                .collect();
            Word::new(crate::Alphabet::binary(), sym)
        });
        let err = stabilize(
            &runs,
            8,
            StabilityConfig {
                initial_len: 16,
                cap: 1024,
            },
            |w| crate::words::max_power_order(w).unwrap(),
        )
        .unwrap_err();
        assert_eq!(
            err,
            Error::NonStabilized {
                cap: 1024,
                last_prefix: 1024
            }
        );
        assert!(err.is_resource_cap());
    }
}
