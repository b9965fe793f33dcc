//! Text forms of secondary structures and the bijection between Motzkin
//! words and AND/OR-tree variants.

mod bijection;
mod variant;
mod word;

pub use bijection::{structure_to_variant, variant_to_structure, MalformedVariant};
pub(crate) use bijection::check_pair;
pub use variant::{parse_variant, print_variant, VariantSyntaxError, VariantTree};
pub(crate) use variant::Step;
pub use word::{parse_structure, print_structure, Alphabet, MotzkinWord, StructureError};
