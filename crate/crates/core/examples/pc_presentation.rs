//! Parsing a power-commutator presentation and multiplying by collection.

use modunits::pcgroup::{format_word, parse_presentation, parse_unchecked};

const D8: &str = "pgroup\np 2\ngens 3\npow g2 = g3\ncomm g2 g1 = g3\n";

fn main() -> modunits::Result<()> {
    let g = parse_presentation(D8)?;
    println!("order {:?}", g.order());
    let (a, b) = (g.generator(0), g.generator(1));
    let ab = g.mul(&a, &b);
    let ba = g.mul(&b, &a);
    println!("g1*g2 = {}, g2*g1 = {}", format_word(&ab.to_word()), format_word(&ba.to_word()));
    println!("[g2, g1] = {}", format_word(&g.commutator(&b, &a).to_word()));
    println!("(g1*g2)^-1 = {}", format_word(&g.inverse(&ab).to_word()));
    println!("order of g2 = {}", g.element_order(&b));
    println!("round trip:\n{}", g.to_source());

    let broken = parse_unchecked("pgroup\np 2\ngens 3\npow g2 = g3\ncomm g2 g1 = g2\n")?;
    match broken.consistency_check() {
        Some(v) => println!("broken presentation: {v}"),
        None => println!("broken presentation passed?"),
    }
    Ok(())
}
