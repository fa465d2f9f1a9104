//! Right-angled Artin groups: defining graphs, words, the Hermiller–Meier
//! moves and their canonical normal forms.

mod cyclic;
mod graph;
mod normal;
mod order;
mod word;

pub use cyclic::{cyclically_reduce, cyclically_reduce_normal};
pub use graph::{DefiningGraph, Gen, GraphFile};
pub use normal::{canonicalize, is_normal, min_class, min_class_of, multiply, normalize, NormalWord, Syllable};
pub use order::{subword_decompose, syllable_order, SyllableOrder};
pub use word::{Letter, Word};

pub(crate) use normal::{normalize_syllables, CanonicalBuilder};
