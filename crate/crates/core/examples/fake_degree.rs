//! Coadjoint orbit profiles and the degree-one comparison behind the fake
//! degree conjecture.

use modunits::fakedegree::{coadjoint_profile, fake_degree_report};
use modunits::nilalgebra::{augmentation_ideal, parse_algebra};
use modunits::pcgroup::builtin;
use modunits::smallfield::make_field;
use modunits::unitgroup::DEFAULT_MAX_GENS;

fn main() -> modunits::Result<()> {
    let heis = parse_algebra(include_str!("../data/heisenberg_f3.alg"))?;
    let prof = coadjoint_profile(&heis)?;
    println!("Heisenberg/F_3 fake degrees (degree -> count): {:?}", prof.fake_degrees);
    let r = fake_degree_report(&heis, DEFAULT_MAX_GENS, true)?;
    println!("  fixed points {} vs |(1+J)_ab| {}: {}", r.fixed_points, r.ab_order, r.verdict.label());
    println!("  orbits vs classes of 1+J: {:?}", r.orbit_check);

    let jm = augmentation_ideal(&builtin("jm14_f39")?, &make_field(2, 1)?)?;
    let r = fake_degree_report(&jm, DEFAULT_MAX_GENS, false)?;
    println!("I(jm14_f39)/F_2: fixed points {} vs |(1+J)_ab| {}: {:?}", r.fixed_points, r.ab_order, r.verdict);
    Ok(())
}
