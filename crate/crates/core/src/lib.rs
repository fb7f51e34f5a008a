//! Unit groups of modular group algebras of finite p-groups, the
//! Bogomolov multiplier, and fake-degree checks for algebra groups.

pub mod abelian;
pub mod cli;
pub mod error;
pub mod fakedegree;
pub mod invariants;
pub mod linalg;
pub mod nilalgebra;
pub mod pcgroup;
pub mod smallfield;
pub mod unitgroup;

pub use error::{Error, Result};
