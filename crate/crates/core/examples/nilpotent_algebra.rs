//! Nilpotent algebras from files and augmentation ideals: power
//! filtrations and Lie commutator subspaces.

use modunits::nilalgebra::{augmentation_ideal, parse_algebra};
use modunits::pcgroup::builtin;
use modunits::smallfield::make_field;

fn main() -> modunits::Result<()> {
    let heis = parse_algebra(include_str!("../data/heisenberg_f3.alg"))?;
    println!("Heisenberg over F_3: nilpotency index {}, filtration dims {:?}", heis.nil_index(), heis.power_filtration().dims());
    let (a, b) = (heis.basis_element(0), heis.basis_element(1));
    println!("b1*b2 = {}, [b1,b2] = {}", heis.format_element(&heis.mul(&a, &b)), heis.format_element(&heis.lie_bracket(&a, &b)));

    for name in ["d8", "q8", "jm14_f39"] {
        let g = builtin(name)?;
        let j = augmentation_ideal(&g, &make_field(2, 1)?)?;
        let k = g.conjugacy_classes()?.count();
        println!(
            "I({name}) over F_2: dim {}, J^t = 0 for t = {}, dim J/[J,J]_L = {} (k - 1 = {})",
            j.dim(),
            j.nil_index(),
            j.dim() - j.lie_commutator_dim(),
            k - 1
        );
    }
    Ok(())
}
