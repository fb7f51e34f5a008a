use num_bigint::BigInt;

use crate::abelian::{cokernel, p_power_log, AbelianGroup, IntMatrix};
use crate::error::{Error, Result};
use crate::pcgroup::{ClassData, PcPresentation};
use crate::smallfield::{make_field, make_galois_ring, FieldDesc};

/// `F_q` for a group over the prime `p`; `q` must be a power of `p`.
pub fn field_for(p: u64, q: u64) -> Result<FieldDesc> {
    match p_power_log(&q.into(), p) {
        Some(n) if n >= 1 => make_field(p, n as usize),
        _ => Err(Error::FieldMismatch(format!("q = {q} is not a power of p = {p}"))),
    }
}

/// `M_q`, generated by `lambda_j (1 - r)` over nontrivial classes `r`.
pub fn mq_structure(pres: &PcPresentation, q: u64) -> Result<AbelianGroup> {
    let field = field_for(pres.p() as u64, q)?;
    let classes = pres.conjugacy_classes()?;
    mq_from_classes(pres, &classes, field.n())
}

/// `M_q` for `q = p^n` from precomputed class data.
pub fn mq_from_classes(pres: &PcPresentation, classes: &ClassData, n: usize) -> Result<AbelianGroup> {
    let p = pres.p() as u64;
    let exp = pres.exponent_from_classes(classes);
    let e = p_power_log(&exp.into(), p).unwrap_or(0).max(1);
    let ring = make_galois_ring(p, n, e)?;
    let pe = ring.modulus as i64;

    let nontrivial: Vec<usize> = classes.nontrivial().collect();
    let mut col_of = vec![usize::MAX; classes.count()];
    for (k, &c) in nontrivial.iter().enumerate() {
        col_of[c] = k;
    }
    let cols = n * nontrivial.len();
    let idx = |j: usize, c: usize| col_of[c] * n + j;
    let mut rows = Vec::with_capacity(2 * cols);
    for &c in &nontrivial {
        for j in 0..n {
            let mut r = vec![0i64; cols];
            r[idx(j, c)] = p as i64;
            if let Some(t) = classes.power_map[c] {
                // p lambda_j (1 - r) = phi(lambda_j) (1 - r^p)
                for (j2, &a) in ring.frob_matrix[j].iter().enumerate() {
                    r[idx(j2, t)] -= a as i64;
                }
            }
            rows.push(r);
            let mut z = vec![0i64; cols];
            z[idx(j, c)] = pe;
            rows.push(z);
        }
    }
    if cols == 0 {
        return Ok(AbelianGroup::trivial());
    }
    cokernel(&IntMatrix::from_rows(
        cols,
        rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect(),
    ))
}

/// Sizes of the layers `p^i M_q / p^(i+1) M_q` against `q^|C_i|`, both as
/// exponents of `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayerCheck {
    pub observed: Vec<u32>,
    pub expected: Vec<u32>,
}

impl LayerCheck {
    pub fn holds(&self) -> bool {
        self.observed == self.expected
    }
}

pub fn mq_layers(mq: &AbelianGroup, classes: &ClassData, p: u64, n: usize) -> LayerCheck {
    let expected: Vec<u32> = classes.height_counts().iter().map(|&c| (c * n) as u32).collect();
    let logs: Vec<u32> = mq
        .factors()
        .iter()
        .map(|&d| p_power_log(&d.into(), p).unwrap_or(0))
        .collect();
    let depth = logs.iter().copied().max().unwrap_or(0) as usize;
    let observed = (0..depth.max(expected.len()))
        .map(|i| logs.iter().filter(|&&a| a as usize > i).count() as u32)
        .collect::<Vec<_>>();
    let mut expected = expected;
    expected.resize(observed.len(), 0);
    LayerCheck { observed, expected }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::builtin;

    fn mq(name: &str, q: u64) -> Vec<u64> {
        mq_structure(&builtin(name).unwrap(), q).unwrap().factors().to_vec()
    }

    #[test]
    fn small_groups() {
        assert_eq!(mq("c4", 2), vec![2, 4]);
        assert_eq!(mq("c2xc2", 2), vec![2, 2, 2]);
        assert_eq!(mq("c2", 2), vec![2]);
        assert_eq!(mq("c2", 4), vec![2, 2]);
        assert_eq!(mq("c4", 4), vec![2, 2, 4, 4]);
    }

    #[test]
    fn layers_match_heights() {
        for name in ["c4", "c8", "d8", "q8", "c2xc2"] {
            let g = builtin(name).unwrap();
            let classes = g.conjugacy_classes().unwrap();
            for n in [1, 2] {
                let m = mq_from_classes(&g, &classes, n).unwrap();
                let check = mq_layers(&m, &classes, 2, n);
                assert!(check.holds(), "{name} {n}: {check:?}");
            }
        }
    }

    #[test]
    fn bad_q() {
        let g = builtin("c2").unwrap();
        assert!(matches!(mq_structure(&g, 6), Err(Error::FieldMismatch(_))));
        assert!(matches!(mq_structure(&g, 1), Err(Error::FieldMismatch(_))));
    }
}
