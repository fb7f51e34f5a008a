//! `M_q`, the main-theorem identity, inclusion kernels `ker f_m` and the
//! Bogomolov multiplier.

mod mq;
mod report;

pub use mq::{field_for, mq_from_classes, mq_layers, mq_structure, LayerCheck};
pub use report::{
    bogomolov, bogomolov_with, kernel_between, kernel_f, kernel_f_with, kernel_from, main_theorem_from, main_theorem_report, BogomolovReport,
    KernelReport, Limits, MainTheoremReport, UnitContext,
};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Result;
use crate::nilalgebra::AlgebraElement;

/// Where the class of a unit `1 + u` sits in `(1 + J)^ab`.
#[derive(Clone, Debug)]
pub struct UnitProbe {
    pub class: Vec<BigInt>,
    /// Whether the class is a `k`-th power.
    pub is_power: bool,
    /// Image of the class over `F_(q^m)`.
    pub image: Vec<BigInt>,
}

impl UnitProbe {
    pub fn is_trivial(&self) -> bool {
        self.class.iter().all(Zero::is_zero)
    }

    pub fn in_kernel(&self) -> bool {
        self.image.iter().all(Zero::is_zero)
    }
}

pub fn probe_unit(ctx: &UnitContext, u: &AlgebraElement, k: u64, m: usize, limits: &Limits) -> Result<UnitProbe> {
    let class = ctx.pcp.project_unit(&ctx.ab, u);
    let is_power = ctx.ab.group.is_multiple_of(&class, k);
    let (big, e) = ctx.extend(m, limits)?;
    let image = big.pcp.project_unit(&big.ab, &ctx.algebra.embed_element(&e, u));
    Ok(UnitProbe { class, is_power, image })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilalgebra::group_ring_element;
    use crate::pcgroup::builtin;
    use num_bigint::BigUint;

    #[test]
    fn main_theorem_small() {
        for (name, q, k) in [("q8", 2, 5), ("c2", 2, 2), ("d8", 4, 5)] {
            let r = main_theorem_report(&builtin(name).unwrap(), q).unwrap();
            assert_eq!(r.k, k);
            assert_eq!(r.inferred_b0_order, BigUint::from(1u32));
            assert_eq!(r.unit_ab_order, r.q_pow_k_minus_1);
        }
    }

    #[test]
    fn kernels_of_trivial_b0() {
        let g = builtin("c4").unwrap();
        for m in [1, 2] {
            assert!(kernel_f(&g, 2, m).unwrap().kernel.is_trivial());
        }
        let b = bogomolov(&builtin("d8").unwrap(), "d8", 2).unwrap();
        assert_eq!(b.b0_exponent, 1);
        assert!(b.b0_structure.is_trivial());
    }

    #[test]
    fn jm14() {
        let g = builtin("jm14_f39").unwrap();
        let b = bogomolov(&g, "jm14_f39", 2).unwrap();
        assert_eq!(b.k, 26);
        assert_eq!(b.unit_ab.factors().iter().filter(|&&d| d == 8).count(), 1);
        assert_eq!(b.mq.structure_string(), "C_2^13 x C_4^6");
        assert_eq!(b.b0_order, BigUint::from(2u32));
        assert_eq!(b.b0_structure.factors(), &[2]);
        assert_eq!(b.b0_exponent, 2);
        assert_eq!(b.kernel_orders.len(), 2);

        let f = field_for(2, 2).unwrap();
        let limits = Limits::default();
        let ctx = UnitContext::new(&g, &f, &limits).unwrap();
        let gen = |i| g.generator(i);
        let m = |a, b| g.mul(a, b);
        let (g3, g5, g7) = (gen(2), gen(4), gen(6));
        // (1 - g7)(g3 - g5) = g3 - g5 - g7 g3 + g7 g5
        let u = group_ring_element(
            &g,
            &ctx.algebra,
            &[(1, g3.clone()), (-1, g5.clone()), (-1, m(&g7, &g3)), (1, m(&g7, &g5))],
        )
        .unwrap();
        // u^2 = 0, so exp(u) = 1 + u
        assert!(ctx.algebra.mul(&u, &u).is_zero());
        let probe = probe_unit(&ctx, &u, 4, 2, &limits).unwrap();
        assert!(!probe.is_trivial());
        assert!(probe.is_power);
        assert!(probe.in_kernel());
    }
}
