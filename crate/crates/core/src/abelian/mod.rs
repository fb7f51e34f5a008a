//! Smith normal form, finite abelian groups, cokernels and kernels.

mod group;
mod local;
mod snf;

pub use group::{apply_hom, cokernel, hom_kernel, p_power_log, AbelianGroup, HomKernel};
pub use local::{cokernel_mod_prime_power, PowerLattice};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
