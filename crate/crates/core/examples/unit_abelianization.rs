//! Abelian invariants of the normalized unit group of `F_q G`.
//!
//! `cargo run --release --example unit_abelianization -- jm14_f39 4`

use std::time::Instant;

use modunits::nilalgebra::augmentation_ideal;
use modunits::pcgroup::builtin;
use modunits::smallfield::make_field;
use modunits::unitgroup::UnitPcp;

fn main() -> modunits::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map(String::as_str).unwrap_or("d8");
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let g = builtin(name)?;
    let f = make_field(g.p() as u64, n)?;
    let start = Instant::now();
    let a = augmentation_ideal(&g, &f)?;
    let pcp = UnitPcp::new(&a)?;
    println!("{} generators, nilpotency index {} ({:?})", pcp.num_generators(), pcp.nil_index(), start.elapsed());
    let ab = pcp.abelianization()?;
    println!("(1 + J)^ab = {}  ({:?})", ab.group.structure_string(), start.elapsed());
    Ok(())
}
