//! Small finite fields, subfield embeddings and Galois rings.

use modunits::smallfield::{find_embedding, make_field, make_galois_ring, subfield_roots};

fn main() -> modunits::Result<()> {
    let f16 = make_field(2, 4)?;
    println!("F_16 = F_2[x]/({:?})  (coefficients low degree first)", f16.modulus());
    let x = f16.generator();
    let inv = f16.inv(x)?;
    println!("x^-1 = {}, x * x^-1 = {}", f16.format(inv), f16.format(f16.mul(x, inv)));
    println!("x^15 = {}", f16.format(f16.pow(x, 15)));

    let f4 = make_field(2, 2)?;
    let roots = subfield_roots(&f4, &f16)?;
    println!("images of x under F_4 -> F_16: {:?}", roots.iter().map(|&r| f16.format(r)).collect::<Vec<_>>());
    let e = find_embedding(&f4, &f16)?;
    for a in f4.elements() {
        println!("  {} -> {}", f4.format(a), f16.format(e.apply(a)));
    }

    let ring = make_galois_ring(2, 2, 3)?;
    println!("GR(8, 2): lifted modulus {:?}, Frobenius matrix {:?}", ring.f_lift, ring.frob_matrix);
    Ok(())
}
