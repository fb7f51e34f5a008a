use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::nilalgebra::{AlgebraElement, NilpotentAlgebra};
use crate::smallfield::FieldElement;

pub const DEFAULT_ORACLE_GUARD: u64 = 1 << 20;

/// Counts for `1 + J` obtained by listing every element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceReport {
    pub group_order: u64,
    pub derived_order: u64,
    pub ab_order: u64,
    pub class_count: u64,
}

struct Table<'a> {
    a: &'a NilpotentAlgebra,
    q: u64,
}

impl Table<'_> {
    fn key(&self, u: &AlgebraElement) -> u64 {
        u.0.iter().rev().fold(0, |k, c| k * self.q + c.0)
    }

    fn element(&self, mut k: u64) -> AlgebraElement {
        let mut v = Vec::with_capacity(self.a.dim());
        for _ in 0..self.a.dim() {
            v.push(FieldElement(k % self.q));
            k /= self.q;
        }
        AlgebraElement(v)
    }

    /// Subgroup generated by `gens`, as a membership bitmap.
    fn closure(&self, gens: &[AlgebraElement], total: u64) -> Vec<bool> {
        let mut seen = vec![false; total as usize];
        let mut stack = vec![self.a.zero()];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.a.unit_mul(&x, g);
                let k = self.key(&y) as usize;
                if !seen[k] {
                    seen[k] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}

pub fn brute_force_units(a: &NilpotentAlgebra) -> Result<BruteForceReport> {
    brute_force_units_with_guard(a, DEFAULT_ORACLE_GUARD)
}

pub fn brute_force_units_with_guard(a: &NilpotentAlgebra, guard: u64) -> Result<BruteForceReport> {
    let f = a.field();
    let q = f.q();
    let total = (q as u128).pow(a.dim() as u32);
    if total > guard as u128 {
        return Err(Error::OracleGuardExceeded(format!("q^dim = {q}^{} exceeds {guard}", a.dim())));
    }
    let total = total as u64;
    let t = Table { a, q };

    // generators 1 + c b_i, topped up until they generate everything
    let mut gens: Vec<AlgebraElement> = Vec::new();
    for i in 0..a.dim() {
        for c in f.elements().skip(1) {
            gens.push(a.scale(c, &a.basis_element(i)));
        }
    }
    let mut member = t.closure(&gens, total);
    while let Some(k) = member.iter().position(|&m| !m) {
        gens.push(t.element(k as u64));
        member = t.closure(&gens, total);
    }

    // conjugacy classes by union-find under conjugation by the generators
    let mut parent: Vec<u64> = (0..total).collect();
    fn find(parent: &mut [u64], mut x: u64) -> u64 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let inverses: Vec<AlgebraElement> = gens.iter().map(|g| a.unit_inverse(g)).collect();
    for k in 0..total {
        let x = t.element(k);
        for (g, gi) in gens.iter().zip(&inverses) {
            let y = a.unit_mul(&a.unit_mul(gi, &x), g);
            let (r1, r2) = (find(&mut parent, k), find(&mut parent, t.key(&y)));
            if r1 != r2 {
                parent[r1.max(r2) as usize] = r1.min(r2);
            }
        }
    }
    let class_count = (0..total).filter(|&k| find(&mut parent, k) == k).count() as u64;

    // derived subgroup: normal closure of generator commutators
    let mut rels: Vec<AlgebraElement> = Vec::new();
    let mut index: HashSet<u64> = HashSet::new();
    for g in &gens {
        for h in &gens {
            let c = a.unit_commutator(g, h);
            if !c.is_zero() && index.insert(t.key(&c)) {
                rels.push(c);
            }
        }
    }
    let mut derived = t.closure(&rels, total);
    loop {
        let mut added = false;
        for r in rels.clone() {
            for (g, gi) in gens.iter().zip(&inverses) {
                let y = a.unit_mul(&a.unit_mul(gi, &r), g);
                let k = t.key(&y);
                if !derived[k as usize] && index.insert(k) {
                    rels.push(y);
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
        derived = t.closure(&rels, total);
    }
    let derived_order = derived.iter().filter(|&&m| m).count() as u64;
    Ok(BruteForceReport {
        group_order: total,
        derived_order,
        ab_order: total / derived_order,
        class_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilalgebra::augmentation_ideal;
    use crate::pcgroup::builtin;
    use crate::smallfield::make_field;

    fn oracle(name: &str) -> BruteForceReport {
        let f = make_field(2, 1).unwrap();
        brute_force_units(&augmentation_ideal(&builtin(name).unwrap(), &f).unwrap()).unwrap()
    }

    #[test]
    fn small_groups() {
        assert_eq!(
            oracle("c2"),
            BruteForceReport { group_order: 2, derived_order: 1, ab_order: 2, class_count: 2 }
        );
        assert_eq!(
            oracle("c4"),
            BruteForceReport { group_order: 8, derived_order: 1, ab_order: 8, class_count: 8 }
        );
        let d8 = oracle("d8");
        assert_eq!((d8.group_order, d8.ab_order), (128, 16));
    }

    #[test]
    fn guard() {
        let f = make_field(2, 1).unwrap();
        let a = augmentation_ideal(&builtin("c8").unwrap(), &f).unwrap();
        assert!(matches!(brute_force_units_with_guard(&a, 64), Err(Error::OracleGuardExceeded(_))));
    }
}
