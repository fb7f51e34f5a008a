//! The group `M_q` from the class power map and a Frobenius lift, with
//! its `p`-power layers.

use modunits::invariants::{mq_from_classes, mq_layers};
use modunits::pcgroup::builtin;

fn main() -> modunits::Result<()> {
    for (name, n) in [("c4", 1), ("c2xc2", 1), ("jm14_f39", 1), ("jm14_f39", 2)] {
        let g = builtin(name)?;
        let classes = g.conjugacy_classes()?;
        let mq = mq_from_classes(&g, &classes, n)?;
        let layers = mq_layers(&mq, &classes, 2, n);
        println!("{name}, q = {}: M_q = {mq}; layers {:?} (expected {:?})", 1 << n, layers.observed, layers.expected);
    }
    Ok(())
}
