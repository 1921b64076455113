//! Distinct abelian-square factors in finite and infinite words.
//!
//! The crate counts factors `uv` with `|u| = |v|` and equal letter counts in `u` and `v`,
//! on explicit words, on the Thue-Morse word, on Sturmian words and on a few constructions.

pub mod cli;
pub mod constructions;
pub mod count;
pub mod error;
pub mod report;
pub mod sturmian;
pub mod thue_morse;
pub mod verify;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, Word};
