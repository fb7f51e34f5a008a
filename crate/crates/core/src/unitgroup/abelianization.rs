use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::pcp::UnitPcp;
use crate::abelian::{AbelianGroup, PowerLattice};
use crate::error::{Error, Result};
use crate::nilalgebra::AlgebraElement;
use crate::smallfield::Embedding;

/// `(1 + J)^ab` together with the pc data it was computed from.
pub struct AbelianizationData {
    pub group: AbelianGroup,
    /// Exponent bound `p^K` used for the local Smith form.
    pub modulus: u64,
}

/// Smallest `K` with `p^K >= t`; then `x^(p^K) = 1` for every unit `x`.
pub(crate) fn exponent_bound(p: u64, nil_index: usize) -> u32 {
    let mut k = 0;
    let mut pk = 1u64;
    while (pk as usize) < nil_index {
        pk *= p;
        k += 1;
    }
    k.max(1)
}

const CHUNK: usize = 16;

impl UnitPcp {
    /// Abelian invariants of `1 + J` with projections of the pc generators.
    pub fn abelianization(&self) -> Result<AbelianizationData> {
        let n = self.num_generators();
        let p = self.p() as u64;
        let k = exponent_bound(p, self.nil_index());
        let mut lat = PowerLattice::new(p, k, n)?;
        let to_row = |exps: &[u32]| -> Vec<(usize, i64)> {
            exps.iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(c, &e)| (c, e as i64))
                .collect()
        };
        for g in 0..n {
            let mut row = to_row(&self.power_exponents(g));
            row.push((g, -(p as i64)));
            lat.insert_sparse(&row);
        }
        let js: Vec<usize> = (1..n).collect();
        for chunk in js.chunks(CHUNK) {
            if lat.is_full() {
                break;
            }
            let rows: Vec<Vec<(usize, i64)>> = chunk
                .par_iter()
                .flat_map_iter(|&j| {
                    (0..j)
                        .filter_map(|i| self.comm_exponents(j, i))
                        .map(|e| to_row(&e))
                        .collect::<Vec<_>>()
                })
                .collect();
            for r in &rows {
                lat.insert_sparse(r);
            }
        }
        let modulus = lat.modulus();
        Ok(AbelianizationData { group: lat.into_group()?, modulus })
    }

    /// Image of the unit `1 + u` in the abelianization.
    pub fn project_unit(&self, ab: &AbelianizationData, u: &AlgebraElement) -> Vec<BigInt> {
        let exps: Vec<BigInt> = self.sift(u).into_iter().map(BigInt::from).collect();
        ab.group.project(&exps)
    }
}

/// Matrix of `(1 + J_q)^ab -> (1 + J_l)^ab` induced by `e`, where `J_l` is
/// `J_q` with scalars extended along `e`. Column `i` is the image of the
/// `i`-th invariant generator of the source.
pub fn inclusion_ab_map(
    src: &UnitPcp,
    src_ab: &AbelianizationData,
    dst: &UnitPcp,
    dst_ab: &AbelianizationData,
    e: &Embedding,
) -> Result<Vec<Vec<BigInt>>> {
    let (a, b) = (src.algebra(), dst.algebra());
    if a.field() != &e.src || b.field() != &e.dst || a.dim() != b.dim() {
        return Err(Error::FieldMismatch(
            "inclusion needs algebras over the embedding's source and target fields".into(),
        ));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs: Vec<_> = a.product_terms(i, j).iter().map(|&(k, c)| (k, e.apply(c))).collect();
            if lhs != b.product_terms(i, j) {
                return Err(Error::FieldMismatch("target is not the scalar extension of the source".into()));
            }
        }
    }
    let images: Vec<Vec<BigInt>> = (0..src.num_generators())
        .map(|g| dst.project_unit(dst_ab, &a.embed_element(e, &src.generator(g))))
        .collect();
    let r_dst = dst_ab.group.rank();
    let mut t = vec![vec![BigInt::zero(); src_ab.group.rank()]; r_dst];
    for (i, gen) in src_ab.group.generators().iter().enumerate() {
        let mut col = vec![BigInt::zero(); r_dst];
        for (g, c) in gen.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (x, y) in col.iter_mut().zip(&images[g]) {
                *x += c * y;
            }
        }
        dst_ab.group.reduce(&mut col);
        for (row, x) in t.iter_mut().zip(col) {
            row[i] = x;
        }
    }
    Ok(t)
}

/// `(1 + J)^ab` for an algebra, with the default generator guard.
pub fn unit_abelianization(a: &crate::nilalgebra::NilpotentAlgebra) -> Result<AbelianizationData> {
    UnitPcp::new(a)?.abelianization()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilalgebra::augmentation_ideal;
    use crate::pcgroup::builtin;
    use crate::smallfield::{find_embedding, make_field};

    fn ab(name: &str, p: u64, n: usize) -> Vec<u64> {
        let a = augmentation_ideal(&builtin(name).unwrap(), &make_field(p, n).unwrap()).unwrap();
        unit_abelianization(&a).unwrap().group.factors().to_vec()
    }

    #[test]
    fn small_cases() {
        assert_eq!(ab("c4", 2, 1), vec![2, 4]);
        assert_eq!(ab("c2xc2", 2, 1), vec![2, 2, 2]);
        assert_eq!(ab("c8", 2, 1), vec![2, 2, 4, 8]);
        assert_eq!(ab("c4", 2, 2), vec![2, 2, 4, 4]);
    }

    // For a commutative algebra, compare |{x : x^(p^i) = 1}| by enumeration.
    #[test]
    fn commutative_torsion_counts() {
        for (name, p, n) in [("c4", 2u64, 1usize), ("c2xc2", 2, 2), ("c8", 2, 1), ("c4", 2, 2)] {
            let a = augmentation_ideal(&builtin(name).unwrap(), &make_field(p, n).unwrap()).unwrap();
            let pcp = UnitPcp::new(&a).unwrap();
            let g = pcp.abelianization().unwrap().group;
            let total = 1usize << pcp.num_generators();
            let mut pk = 1u64;
            for _ in 0..4 {
                pk *= p;
                let mut count = 0u64;
                for bits in 0..total {
                    let e: Vec<u32> = (0..pcp.num_generators()).map(|k| ((bits >> k) & 1) as u32).collect();
                    let u = pcp.rebuild(&e);
                    if a.unit_pow(&u, pk).is_zero() {
                        count += 1;
                    }
                }
                assert_eq!(g.m_torsion_order(pk), count.into(), "{name} {pk}");
            }
        }
    }

    #[test]
    fn bound() {
        assert_eq!(exponent_bound(2, 8), 3);
        assert_eq!(exponent_bound(2, 9), 4);
        assert_eq!(exponent_bound(3, 3), 1);
        assert_eq!(exponent_bound(2, 1), 1);
    }

    #[test]
    fn inclusion_is_identity_on_trivial_extension() {
        let f = make_field(2, 1).unwrap();
        let a = augmentation_ideal(&builtin("d8").unwrap(), &f).unwrap();
        let pcp = UnitPcp::new(&a).unwrap();
        let abd = pcp.abelianization().unwrap();
        let id = find_embedding(&f, &f).unwrap();
        let t = inclusion_ab_map(&pcp, &abd, &pcp, &abd, &id).unwrap();
        for (i, row) in t.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, BigInt::from((i == j) as u8));
            }
        }
    }
}
