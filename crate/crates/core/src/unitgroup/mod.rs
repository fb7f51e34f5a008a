//! The unit group `1 + J` of a nilpotent algebra as a polycyclic group, and
//! its abelianization.

mod abelianization;
mod pcp;

pub use abelianization::{inclusion_ab_map, unit_abelianization, AbelianizationData};
pub use pcp::{UnitPcp, DEFAULT_MAX_GENS};
