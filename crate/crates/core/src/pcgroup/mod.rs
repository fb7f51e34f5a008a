//! Finite p-groups given by power-commutator presentations.

mod classes;
mod collect;
mod presentation;

pub use classes::{ClassData, ConjugacyClass, DEFAULT_MAX_ORDER};
pub use collect::{ConsistencyKind, ConsistencyViolation, COLLECTION_CAP};
pub use presentation::{
    builtin, builtin_source, format_word, parse_presentation, parse_unchecked, GroupElement, PcPresentation, Word,
    BUILTIN_NAMES,
};
