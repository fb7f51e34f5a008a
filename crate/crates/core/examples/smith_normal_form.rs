//! Smith normal form, cokernels and kernels of homomorphisms.

use modunits::abelian::{cokernel, hom_kernel, smith_normal_form, AbelianGroup, IntMatrix};
use num_bigint::BigInt;

fn main() -> modunits::Result<()> {
    let m = IntMatrix::from_i64(3, &[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let sf = smith_normal_form(&m);
    println!("diagonal {:?}", sf.diagonal().iter().map(|d| d.to_string()).collect::<Vec<_>>());
    println!("U M V == S: {}", sf.u.mul(&m).mul(&sf.v) == sf.s);

    let g = cokernel(&m)?;
    println!("Z^3 / rows = {g}, order {}", g.order()?);

    // multiplication by 2 on C_4 x C_2
    let a = AbelianGroup::from_factors(&[2, 4])?;
    let t = vec![vec![BigInt::from(0), BigInt::from(0)], vec![BigInt::from(0), BigInt::from(2)]];
    let k = hom_kernel(&a, &a, &t)?;
    println!("ker(x -> 2x) on {a} = {}", k.group);
    Ok(())
}
