use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub(crate) const OPEN: u8 = b'(';
pub(crate) const CLOSE: u8 = b')';
pub(crate) const UNPAIRED: u8 = b'*';
const DOT: u8 = b'.';

/// Symbol used for unpaired bases in text.
///
/// When parsing, `Star` accepts only `*` while `Dot` accepts both `*` and
/// `.`. When printing, the chosen symbol is emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Alphabet {
    #[default]
    Star,
    Dot,
}

impl Alphabet {
    fn unpaired(self) -> u8 {
        match self {
            Alphabet::Star => UNPAIRED,
            Alphabet::Dot => DOT,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("unbalanced brackets at position {position}")]
    UnbalancedBrackets { position: usize },
    #[error("empty hairpin \"()\" at position {position}")]
    EmptyHairpin { position: usize },
    #[error("illegal character {byte:#04x} at position {position}")]
    IllegalCharacter { position: usize, byte: u8 },
}

/// A secondary structure as a Motzkin word over `(`, `)` and `*`.
///
/// Brackets are balanced with non-negative prefix balance, and no pair
/// encloses an empty region. The empty word is valid (`n = m = 0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct MotzkinWord {
    symbols: Vec<u8>,
    pairs: usize,
}

impl MotzkinWord {
    /// Parses and validates `text`. Errors report byte offsets.
    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self, StructureError> {
        Self::parse_bytes(text.as_bytes(), alphabet)
    }

    pub fn parse_bytes(bytes: &[u8], alphabet: Alphabet) -> Result<Self, StructureError> {
        let mut symbols = Vec::with_capacity(bytes.len());
        let mut depth = 0usize;
        let mut pairs = 0usize;
        for (position, &byte) in bytes.iter().enumerate() {
            match byte {
                OPEN => {
                    depth += 1;
                    pairs += 1;
                }
                CLOSE => {
                    if depth == 0 {
                        return Err(StructureError::UnbalancedBrackets { position });
                    }
                    if symbols.last() == Some(&OPEN) {
                        return Err(StructureError::EmptyHairpin { position: position - 1 });
                    }
                    depth -= 1;
                }
                UNPAIRED => {}
                DOT if alphabet == Alphabet::Dot => {}
                _ => return Err(StructureError::IllegalCharacter { position, byte }),
            }
            symbols.push(if byte == DOT { UNPAIRED } else { byte });
        }
        if depth != 0 {
            return Err(StructureError::UnbalancedBrackets {
                position: bytes.len(),
            });
        }
        Ok(Self { symbols, pairs })
    }

    /// Wraps symbols already known to form a valid word.
    pub(crate) fn from_valid(symbols: Vec<u8>, pairs: usize) -> Self {
        debug_assert_eq!(symbols.iter().filter(|&&b| b == OPEN).count(), pairs);
        Self { symbols, pairs }
    }

    /// The all-unpaired word of length `n`.
    pub fn unpaired(n: usize) -> Self {
        Self {
            symbols: vec![UNPAIRED; n],
            pairs: 0,
        }
    }

    /// Length `n`.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Number of base-pairs `m`.
    pub fn pairs(&self) -> usize {
        self.pairs
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.symbols
    }

    /// Canonical `*` form.
    pub fn as_str(&self) -> &str {
        // Only ASCII symbols are ever stored.
        std::str::from_utf8(&self.symbols).expect("ascii symbols")
    }

    pub fn to_text(&self, alphabet: Alphabet) -> String {
        match alphabet {
            Alphabet::Star => self.as_str().to_owned(),
            Alphabet::Dot => self
                .symbols
                .iter()
                .map(|&b| if b == UNPAIRED { alphabet.unpaired() as char } else { b as char })
                .collect(),
        }
    }
}

impl fmt::Display for MotzkinWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MotzkinWord {
    type Err = StructureError;

    /// Accepts both `*` and `.` for unpaired bases.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s, Alphabet::Dot)
    }
}

pub fn parse_structure(text: &str, alphabet: Alphabet) -> Result<MotzkinWord, StructureError> {
    MotzkinWord::parse(text, alphabet)
}

pub fn print_structure(word: &MotzkinWord, alphabet: Alphabet) -> String {
    word.to_text(alphabet)
}
