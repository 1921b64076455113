use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// An ordered alphabet of `σ` distinct printable symbol names.
///
/// Symbol `i` of a word over this alphabet is stored as the index `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidAlphabet(
                "alphabet must have at least one letter".into(),
            ));
        }
        if names.len() > u8::MAX as usize {
            return Err(Error::InvalidAlphabet(format!(
                "{} letters is too many",
                names.len()
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlphabet(format!("bad symbol name {name:?}")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidAlphabet(format!(
                    "duplicate symbol name {name:?}"
                )));
            }
        }
        Ok(Self { names })
    }

    /// Letters `a`, `b`, `c`, ... (then `s26`, `s27`, ... beyond `z`).
    pub fn with_size(sigma: usize) -> Result<Self> {
        Self::new((0..sigma).map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("s{i}")
            }
        }))
    }

    /// The alphabet `{a, b}`.
    pub fn binary() -> Self {
        Self::with_size(2).expect("two letters")
    }

    /// The alphabet `{0, 1}` used for the Thue-Morse word (`0` is index 0, i.e. `a`).
    pub fn binary_digits() -> Self {
        Self::new(["0", "1"]).expect("two digits")
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, symbol: u8) -> &str {
        &self.names[symbol as usize]
    }

    pub fn index_of(&self, token: &str) -> Option<u8> {
        self.names.iter().position(|n| n == token).map(|i| i as u8)
    }

    /// True when every name is a single character, so words print without separators.
    pub fn is_single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_names() {
        let a = Alphabet::with_size(3).unwrap();
        assert_eq!(a.names(), &["a", "b", "c"]);
        assert_eq!(a.index_of("c"), Some(2));
        assert!(a.is_single_char());
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::with_size(0).is_err());
        assert!(Alphabet::new(["a", "a"]).is_err());
        assert!(Alphabet::new(["a", "b c"]).is_err());
    }
}
