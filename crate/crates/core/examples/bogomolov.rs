//! Order, structure and exponent of the Bogomolov multiplier from unit
//! group abelianizations over a tower of fields.

use modunits::invariants::bogomolov;
use modunits::pcgroup::builtin;

fn main() -> modunits::Result<()> {
    for (name, q) in [("jm14_f39", 2), ("d8", 2), ("q8", 4), ("heis3", 3)] {
        let r = bogomolov(&builtin(name)?, name, q)?;
        println!("{name}, q = {q}: k = {}, (1+I)_ab = {}", r.k, r.unit_ab);
        println!("  M_q = {}", r.mq);
        println!("  |ker f_m|: {:?}", r.kernel_orders.iter().map(|(m, o)| format!("m={m}: {o}")).collect::<Vec<_>>());
        println!("  B_0 = {} (order {}, exponent {})", r.b0_structure, r.b0_order, r.b0_exponent);
    }
    Ok(())
}
