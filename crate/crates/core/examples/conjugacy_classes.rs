//! Conjugacy classes, class power map and heights of a built-in group.
//!
//! `cargo run --example conjugacy_classes -- q8`

use modunits::pcgroup::{builtin, format_word};

fn main() -> modunits::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "jm14_f39".into());
    let g = builtin(&name)?;
    let data = g.conjugacy_classes()?;
    println!("{name}: k = {}, exponent = {}, pi_ab = {}", data.count(), g.exponent_from_classes(&data), g.abelianization()?);
    for (c, cl) in data.classes.iter().enumerate() {
        println!(
            "{c:>3} {:<16} size {:>2}  p-th power -> {:?}  height {:?}",
            format_word(&cl.rep.to_word()),
            cl.size,
            data.power_map[c],
            data.heights[c]
        );
    }
    println!("classes per height: {:?}", data.height_counts());
    Ok(())
}
