//! Enumerating a small unit group `1 + J` directly, against the
//! polycyclic computation.

use modunits::fakedegree::brute_force_units;
use modunits::nilalgebra::augmentation_ideal;
use modunits::pcgroup::builtin;
use modunits::smallfield::make_field;
use modunits::unitgroup::unit_abelianization;

fn main() -> modunits::Result<()> {
    let f2 = make_field(2, 1)?;
    for name in ["c2", "c4", "c2xc2", "d8", "q8"] {
        let a = augmentation_ideal(&builtin(name)?, &f2)?;
        let bf = brute_force_units(&a)?;
        let ab = unit_abelianization(&a)?.group;
        println!(
            "{name}: |1+J| = {}, |G'| = {}, classes {}, |G_ab| = {} vs {} = {}",
            bf.group_order,
            bf.derived_order,
            bf.class_count,
            bf.ab_order,
            ab,
            ab.order()?
        );
    }
    Ok(())
}
