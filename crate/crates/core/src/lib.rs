//! Exact combinatorics of RNA secondary structures of length `n` with `m`
//! base-pairs.
//!
//! Structures are Motzkin words over `(`, `)` and `*` in which no pair
//! encloses an empty region. Each word corresponds to exactly one variant
//! of an AND/OR tree built from the counting recurrence for `S(n, m)`;
//! ranking and unranking work on those variants.
//!
//! - [`counting`]: `S(n, m)` by closed form, recurrence and Narayana numbers
//! - [`codec`]: word and variant text forms, and the word/variant bijection
//! - [`ranking`]: rank, unrank, enumerate and sample
//! - [`oracle`]: brute-force reference enumeration for verification
//! - [`cli`]: the `rnass` command-line front-end
//!
//! ```
//! use rnass::codec::MotzkinWord;
//! use rnass::counting::CountTable;
//! use rnass::ranking::{rank_structure, unrank_structure};
//!
//! let table = CountTable::build(8, 3);
//! let word: MotzkinWord = "((*)(*))".parse().unwrap();
//! let rank = rank_structure(&word, &table).unwrap();
//! assert_eq!(rank, 6u32.into());
//! assert_eq!(unrank_structure(&rank, 8, 3, &table).unwrap(), word);
//! ```

pub mod cli;
pub mod codec;
pub mod counting;
pub mod oracle;
pub mod ranking;

pub use codec::{Alphabet, MotzkinWord, VariantTree};
pub use counting::{BigCount, CountTable, Counts, ExplicitCounts, StructureParams};
pub use ranking::{RandomSource, Rank, RankError};
