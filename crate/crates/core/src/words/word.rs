use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::alphabet::Alphabet;
use super::dedup::FactorId;

/// A finite word over a fixed alphabet.
///
/// Symbols are stored as indices into the alphabet. The alphabet is shared, so
/// slicing and concatenation do not copy symbol names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    alphabet: Arc<Alphabet>,
    symbols: Vec<u8>,
}

impl Word {
    pub fn new(alphabet: Alphabet, symbols: Vec<u8>) -> Result<Self> {
        Self::with_shared(Arc::new(alphabet), symbols)
    }

    pub fn with_shared(alphabet: Arc<Alphabet>, symbols: Vec<u8>) -> Result<Self> {
        let sigma = alphabet.size();
        if let Some(&bad) = symbols.iter().find(|&&s| s as usize >= sigma) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad as usize,
                sigma,
            });
        }
        Ok(Self { alphabet, symbols })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self {
            alphabet: Arc::new(alphabet),
            symbols: Vec::new(),
        }
    }

    /// Parses `text` over `alphabet`. Single-character alphabets read one token
    /// per character (whitespace ignored); otherwise tokens are whitespace-separated.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut symbols = Vec::new();
        if alphabet.is_single_char() {
            let mut buf = [0u8; 4];
            for c in text.chars().filter(|c| !c.is_whitespace()) {
                let tok = c.encode_utf8(&mut buf);
                symbols.push(
                    alphabet
                        .index_of(tok)
                        .ok_or_else(|| Error::UnknownToken(tok.to_string()))?,
                );
            }
        } else {
            for tok in text.split_whitespace() {
                symbols.push(
                    alphabet
                        .index_of(tok)
                        .ok_or_else(|| Error::UnknownToken(tok.to_string()))?,
                );
            }
        }
        Self::new(alphabet, symbols)
    }

    /// Parses a binary word written with `a`/`b` or with the digits `0`/`1`.
    ///
    /// Digits map `0 -> a` and `1 -> b`; the returned word keeps the alphabet the
    /// input was written in (`{a,b}` or `{0,1}`).
    pub fn parse_binary(text: &str) -> Result<Self> {
        let trimmed: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if trimmed.chars().all(|c| c == '0' || c == '1') && !trimmed.is_empty() {
            Self::parse(&trimmed, Alphabet::binary_digits())
        } else {
            Self::parse(&trimmed, Alphabet::binary())
        }
    }

    /// Shorthand for words over `{a, b, c, ...}` sized to fit the text.
    pub fn from_letters(text: &str) -> Result<Self> {
        let max = text
            .bytes()
            .filter(|b| !b.is_ascii_whitespace())
            .max()
            .unwrap_or(b'b');
        if !(b'a'..=b'z').contains(&max) {
            return Err(Error::UnknownToken(char::from(max).to_string()));
        }
        let sigma = ((max - b'a') as usize + 1).max(2);
        Self::parse(text, Alphabet::with_size(sigma)?)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn shared_alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn sigma(&self) -> usize {
        self.alphabet.size()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn into_symbols(self) -> Vec<u8> {
        self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn factor(&self, start: usize, len: usize) -> Result<Word> {
        let end = start
            .checked_add(len)
            .filter(|&e| e <= self.len())
            .ok_or(Error::OutOfRange {
                start,
                end: start.saturating_add(len),
                len: self.len(),
            })?;
        Ok(Word {
            alphabet: Arc::clone(&self.alphabet),
            symbols: self.symbols[start..end].to_vec(),
        })
    }

    pub fn prefix(&self, len: usize) -> Result<Word> {
        self.factor(0, len)
    }

    pub fn factor_of(&self, id: FactorId) -> Result<Word> {
        self.factor(id.start, id.len)
    }

    pub fn reversed(&self) -> Word {
        let mut symbols = self.symbols.clone();
        symbols.reverse();
        Word {
            alphabet: Arc::clone(&self.alphabet),
            symbols,
        }
    }

    /// Renames letters: symbol `s` becomes `perm[s]`. `perm` must be a permutation of `0..σ`.
    pub fn permuted(&self, perm: &[u8]) -> Result<Word> {
        let sigma = self.sigma();
        let mut seen = vec![false; sigma];
        if perm.len() != sigma {
            return Err(Error::InvalidArgument(
                "permutation length differs from alphabet size".into(),
            ));
        }
        for &p in perm {
            if p as usize >= sigma || std::mem::replace(&mut seen[p as usize], true) {
                return Err(Error::InvalidArgument("not a permutation".into()));
            }
        }
        let symbols = self.symbols.iter().map(|&s| perm[s as usize]).collect();
        Ok(Word {
            alphabet: Arc::clone(&self.alphabet),
            symbols,
        })
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch);
        }
        let mut symbols = self.symbols.clone();
        symbols.extend_from_slice(&other.symbols);
        Ok(Word {
            alphabet: Arc::clone(&self.alphabet),
            symbols,
        })
    }

    pub fn power(&self, k: usize) -> Word {
        Word {
            alphabet: Arc::clone(&self.alphabet),
            symbols: self.symbols.repeat(k),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.alphabet.is_single_char() {
            ""
        } else {
            " "
        };
        for (i, &s) in self.symbols.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(self.alphabet.name(s))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let w = Word::from_letters("abaab").unwrap();
        assert_eq!(w.symbols(), &[0, 1, 0, 0, 1]);
        assert_eq!(w.to_string(), "abaab");
        let t = Word::parse_binary("0110").unwrap();
        assert_eq!(t.symbols(), &[0, 1, 1, 0]);
        assert_eq!(t.to_string(), "0110");
    }

    #[test]
    fn multi_char_tokens() {
        let alpha = Alphabet::new(["x1", "x2"]).unwrap();
        let w = Word::parse("x1 x2 x2", alpha).unwrap();
        assert_eq!(w.symbols(), &[0, 1, 1]);
        assert_eq!(w.to_string(), "x1 x2 x2");
    }

    #[test]
    fn rejects_foreign_symbols() {
        assert!(Word::parse("abc", Alphabet::binary()).is_err());
        assert!(Word::new(Alphabet::binary(), vec![0, 2]).is_err());
    }

    #[test]
    fn factor_bounds() {
        let w = Word::from_letters("abaab").unwrap();
        assert_eq!(w.factor(1, 3).unwrap().to_string(), "baa");
        assert!(w.factor(3, 3).is_err());
        assert!(w.factor(usize::MAX, 2).is_err());
    }

    #[test]
    fn concat_requires_same_alphabet() {
        let a = Word::from_letters("ab").unwrap();
        let d = Word::parse_binary("01").unwrap();
        assert_eq!(a.concat(&a).unwrap().to_string(), "abab");
        assert_eq!(a.concat(&d), Err(Error::AlphabetMismatch));
    }
}
