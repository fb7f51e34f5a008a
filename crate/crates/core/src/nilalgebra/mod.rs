//! Nilpotent algebras over `F_q` by structure constants, augmentation
//! ideals of group algebras, power filtrations.

mod algebra;
mod filtration;
mod parse;
pub(crate) mod space;

pub use algebra::{augmentation_ideal, group_ring_element, AlgebraElement, NilpotentAlgebra, MAX_DIM};
pub use filtration::Filtration;
pub use parse::parse_algebra;
