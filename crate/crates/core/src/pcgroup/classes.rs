use num_bigint::BigInt;

use super::presentation::{GroupElement, PcPresentation};
use crate::abelian::{cokernel, AbelianGroup, IntMatrix};
use crate::error::{Error, Result};

/// Default limit on `p^m` for operations that enumerate the group.
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    /// Lexicographically minimal member.
    pub rep: GroupElement,
    pub rep_index: usize,
    pub size: u64,
}

/// Conjugacy classes with the class power map and heights.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub classes: Vec<ConjugacyClass>,
    /// Class of `rep^p`, or `None` when that power is trivial.
    pub power_map: Vec<Option<usize>>,
    /// Largest `i` with `rep` a `p^i`-th power; `None` for the trivial class.
    pub heights: Vec<Option<u32>>,
    class_of: Vec<u32>,
}

impl ClassData {
    /// `k(pi)`.
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of_index(&self, index: usize) -> usize {
        self.class_of[index] as usize
    }

    pub fn trivial_class(&self) -> usize {
        self.class_of[0] as usize
    }

    /// Indices of the nontrivial classes, in class order.
    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        let t = self.trivial_class();
        (0..self.classes.len()).filter(move |&c| c != t)
    }

    /// Element indices of every member of class `c`.
    pub fn members(&self, c: usize) -> Vec<usize> {
        self.class_of
            .iter()
            .enumerate()
            .filter(|(_, &k)| k as usize == c)
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of classes of each finite height `0, 1, 2, ...`.
    pub fn height_counts(&self) -> Vec<usize> {
        let max = self.heights.iter().flatten().copied().max();
        let mut out = vec![0; max.map_or(0, |m| m as usize + 1)];
        for h in self.heights.iter().flatten() {
            out[*h as usize] += 1;
        }
        out
    }
}

fn check_order(pres: &PcPresentation, max_order: u64) -> Result<usize> {
    match pres.order() {
        Some(o) if o <= max_order => Ok(o as usize),
        _ => Err(Error::OrderGuardExceeded(format!(
            "group of order {}^{} exceeds the limit {}",
            pres.p(),
            pres.m(),
            max_order
        ))),
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let up = parent[parent[x as usize] as usize];
        parent[x as usize] = up;
        x = up;
    }
    x
}

impl PcPresentation {
    pub fn conjugacy_classes(&self) -> Result<ClassData> {
        self.conjugacy_classes_with_guard(DEFAULT_MAX_ORDER)
    }

    /// Orbits under conjugation by the generators, merged with union-find.
    pub fn conjugacy_classes_with_guard(&self, max_order: u64) -> Result<ClassData> {
        let order = check_order(self, max_order)?;
        let m = self.m();
        let mut parent: Vec<u32> = (0..order as u32).collect();
        if !self.is_abelian_presentation() {
            let inverses: Vec<GroupElement> = (0..m).map(|i| self.inverse(&self.generator(i))).collect();
            for idx in 0..order {
                let x = self.element_at(idx);
                let word = x.to_word();
                for (i, inv) in inverses.iter().enumerate() {
                    let mut state = inv.0.clone();
                    self.collect_onto(&mut state, &word)?;
                    self.collect_onto(&mut state, &[(i, 1)])?;
                    let y = self.index_of(&GroupElement(state));
                    let (a, b) = (find(&mut parent, idx as u32), find(&mut parent, y as u32));
                    if a != b {
                        // keep the smaller index as root
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi as usize] = lo;
                    }
                }
            }
        }
        let mut class_of = vec![0u32; order];
        let mut classes: Vec<ConjugacyClass> = Vec::new();
        let mut root_class = vec![u32::MAX; order];
        for idx in 0..order {
            let r = find(&mut parent, idx as u32) as usize;
            if root_class[r] == u32::MAX {
                root_class[r] = classes.len() as u32;
                classes.push(ConjugacyClass {
                    rep: self.element_at(r),
                    rep_index: r,
                    size: 0,
                });
            }
            let c = root_class[r];
            class_of[idx] = c;
            classes[c as usize].size += 1;
        }

        let p = self.p() as u64;
        let power_map: Vec<Option<usize>> = classes
            .iter()
            .map(|c| {
                let y = self.pow(&c.rep, p);
                (!y.is_identity()).then(|| class_of[self.index_of(&y)] as usize)
            })
            .collect();

        // S_0 = all classes, S_{i+1} = P(S_i)
        let k = classes.len();
        let trivial = class_of[0] as usize;
        let mut heights: Vec<Option<u32>> = vec![Some(0); k];
        heights[trivial] = None;
        let mut level: Vec<bool> = vec![true; k];
        let mut i = 0u32;
        loop {
            let mut next = vec![false; k];
            for c in 0..k {
                if level[c] {
                    if let Some(t) = power_map[c] {
                        next[t] = true;
                    }
                }
            }
            if !next.iter().any(|&b| b) {
                break;
            }
            i += 1;
            for c in 0..k {
                if next[c] {
                    heights[c] = Some(i);
                }
            }
            level = next;
        }
        Ok(ClassData {
            classes,
            power_map,
            heights,
            class_of,
        })
    }

    /// Largest element order, taken over class representatives.
    pub fn group_exponent(&self) -> Result<u64> {
        let data = self.conjugacy_classes()?;
        Ok(self.exponent_from_classes(&data))
    }

    pub fn exponent_from_classes(&self, data: &ClassData) -> u64 {
        data.classes.iter().map(|c| self.element_order(&c.rep)).max().unwrap_or(1)
    }

    /// `pi_ab` as the cokernel of the abelianized relations.
    pub fn abelianization(&self) -> Result<AbelianGroup> {
        let m = self.m();
        let p = self.p() as i64;
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..m {
            let mut r = vec![BigInt::from(0); m];
            r[i] = BigInt::from(p);
            for &(k, e) in self.power_word(i) {
                r[k] -= e as i64;
            }
            rows.push(r);
        }
        for j in 0..m {
            for i in 0..j {
                let w = self.comm_word(j, i);
                if !w.is_empty() {
                    let mut r = vec![BigInt::from(0); m];
                    for &(k, e) in w {
                        r[k] += e as i64;
                    }
                    rows.push(r);
                }
            }
        }
        cokernel(&IntMatrix::from_rows(m, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::builtin;
    use std::collections::HashSet;

    fn brute_classes(pres: &PcPresentation) -> usize {
        let n = pres.order().unwrap() as usize;
        let elems: Vec<GroupElement> = (0..n).map(|i| pres.element_at(i)).collect();
        let mut seen = HashSet::new();
        let mut count = 0;
        for x in &elems {
            if seen.contains(x) {
                continue;
            }
            count += 1;
            for g in &elems {
                seen.insert(pres.conjugate(x, g));
            }
        }
        count
    }

    fn derived_order(pres: &PcPresentation) -> usize {
        let n = pres.order().unwrap() as usize;
        let elems: Vec<GroupElement> = (0..n).map(|i| pres.element_at(i)).collect();
        let mut sub: HashSet<GroupElement> = HashSet::new();
        sub.insert(pres.identity());
        for a in &elems {
            for b in &elems {
                sub.insert(pres.commutator(a, b));
            }
        }
        loop {
            let cur: Vec<GroupElement> = sub.iter().cloned().collect();
            let before = sub.len();
            for a in &cur {
                for b in &cur {
                    sub.insert(pres.mul(a, b));
                }
            }
            if sub.len() == before {
                return before;
            }
        }
    }

    #[test]
    fn class_counts_match_brute_force() {
        for (name, k) in [("c2", 2), ("c4", 4), ("c2xc2", 4), ("c8", 8), ("d8", 5), ("q8", 5), ("heis3", 11)] {
            let pres = builtin(name).unwrap();
            let data = pres.conjugacy_classes().unwrap();
            assert_eq!(data.count(), k, "{name}");
            assert_eq!(brute_classes(&pres), k, "{name}");
            let total: u64 = data.classes.iter().map(|c| c.size).sum();
            assert_eq!(total, pres.order().unwrap());
        }
    }

    #[test]
    fn jm14_has_26_classes_and_exponent_4() {
        let pres = builtin("jm14_f39").unwrap();
        let data = pres.conjugacy_classes().unwrap();
        assert_eq!(data.count(), 26);
        let brute = (0..128).map(|i| pres.element_order(&pres.element_at(i))).max().unwrap();
        assert_eq!(brute, 4);
        assert_eq!(pres.exponent_from_classes(&data), 4);
        assert_eq!(brute_classes(&pres), 26);
    }

    #[test]
    fn exponents() {
        assert_eq!(builtin("d8").unwrap().group_exponent().unwrap(), 4);
        assert_eq!(builtin("c8").unwrap().group_exponent().unwrap(), 8);
        assert_eq!(builtin("heis3").unwrap().group_exponent().unwrap(), 3);
    }

    #[test]
    fn abelianizations() {
        assert_eq!(builtin("jm14_f39").unwrap().abelianization().unwrap().factors(), &[4, 4]);
        assert_eq!(builtin("q8").unwrap().abelianization().unwrap().factors(), &[2, 2]);
        assert_eq!(builtin("c4").unwrap().abelianization().unwrap().factors(), &[4]);
        for name in crate::pcgroup::BUILTIN_NAMES {
            let pres = builtin(name).unwrap();
            let ab = pres.abelianization().unwrap();
            let ab_order = ab.order().unwrap();
            assert_eq!(
                ab_order * num_bigint::BigUint::from(derived_order(&pres)),
                num_bigint::BigUint::from(pres.order().unwrap()),
                "{name}"
            );
        }
    }

    #[test]
    fn power_map_and_heights() {
        let c8 = builtin("c8").unwrap();
        let data = c8.conjugacy_classes().unwrap();
        // g1 has height 0, g1^2 = g2 has height 1, g3 height 2
        let cls = |x: &GroupElement| data.class_of_index(c8.index_of(x));
        assert_eq!(data.heights[cls(&c8.generator(0))], Some(0));
        assert_eq!(data.heights[cls(&c8.generator(1))], Some(1));
        assert_eq!(data.heights[cls(&c8.generator(2))], Some(2));
        assert_eq!(data.heights[data.trivial_class()], None);
        assert_eq!(data.height_counts(), vec![4, 2, 1]);
        for c in 0..data.count() {
            if let Some(t) = data.power_map[c] {
                assert!(data.heights[t].unwrap() > data.heights[c].unwrap());
            }
        }
    }

    #[test]
    fn guard_is_enforced() {
        let pres = builtin("jm14_f39").unwrap();
        assert!(matches!(
            pres.conjugacy_classes_with_guard(64),
            Err(Error::OrderGuardExceeded(_))
        ));
    }
}
