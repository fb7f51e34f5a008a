//! The unit `1 + (1 - g7)(g3 - g5)` in `(1 + I)_ab` for the order-128
//! group with nontrivial `B_0`: nonzero, a 4th power, and killed over `F_4`.

use modunits::invariants::{probe_unit, Limits, UnitContext};
use modunits::nilalgebra::group_ring_element;
use modunits::pcgroup::builtin;
use modunits::smallfield::make_field;

fn main() -> modunits::Result<()> {
    let g = builtin("jm14_f39")?;
    let limits = Limits::default();
    let ctx = UnitContext::new(&g, &make_field(2, 1)?, &limits)?;
    let (g3, g5, g7) = (g.generator(2), g.generator(4), g.generator(6));
    let u = group_ring_element(
        &g,
        &ctx.algebra,
        &[(1, g3.clone()), (-1, g5.clone()), (-1, g.mul(&g7, &g3)), (1, g.mul(&g7, &g5))],
    )
    .expect("augmentation zero");
    println!("u^2 = 0: {}", ctx.algebra.mul(&u, &u).is_zero());
    let probe = probe_unit(&ctx, &u, 4, 2, &limits)?;
    println!("(1 + I)_ab = {}", ctx.ab.group);
    println!("class of 1 + u: {:?}", probe.class.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    println!("nonzero: {}, 4th power: {}, in ker f_2: {}", !probe.is_trivial(), probe.is_power, probe.in_kernel());
    Ok(())
}
