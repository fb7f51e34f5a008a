//! Finite fields `F_{p^n}`, subfield embeddings, and truncated Galois rings.

mod embedding;
mod field;
mod galois;
pub(crate) mod poly;

pub use embedding::{find_embedding, find_embedding_nth, subfield_roots, Embedding};
pub use field::{make_field, FieldDesc, FieldElement, MAX_DEGREE};
pub use galois::{make_galois_ring, GaloisRing};
pub use poly::is_prime;
