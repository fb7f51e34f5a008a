//! Collection from the left and the derived element arithmetic.

use std::fmt;

use super::presentation::{format_word, GroupElement, PcPresentation, Word};
use crate::error::{Error, Result};

/// Collection aborts with [`Error::CollectionDiverged`] after this many
/// generator steps.
pub const COLLECTION_CAP: u64 = 1_000_000_000;

impl PcPresentation {
    /// Normal form of an arbitrary word of `(generator, exponent)` pairs.
    pub fn collect(&self, word: &[(usize, u32)]) -> Result<GroupElement> {
        let mut state = vec![0u32; self.m()];
        self.collect_onto(&mut state, word)?;
        Ok(GroupElement(state))
    }

    /// Multiplies the normal form in `state` on the right by `word`.
    pub fn collect_onto(&self, state: &mut [u32], word: &[(usize, u32)]) -> Result<()> {
        let mut stack: Vec<(usize, u32)> = word.iter().rev().copied().collect();
        let mut steps = 0u64;
        while let Some((i, e)) = stack.pop() {
            if e == 0 {
                continue;
            }
            steps += 1;
            if steps > COLLECTION_CAP {
                return Err(Error::CollectionDiverged(COLLECTION_CAP));
            }
            if e > 1 {
                stack.push((i, e - 1));
            }
            self.mul_generator(state, i, &mut stack);
        }
        Ok(())
    }

    fn mul_generator(&self, state: &mut [u32], i: usize, stack: &mut Vec<(usize, u32)>) {
        let m = self.m();
        let p = self.p();
        let commutes = (i + 1..m).all(|k| state[k] == 0 || self.comm_word(k, i).is_empty());
        if commutes && state[i] + 1 < p {
            state[i] += 1;
            return;
        }
        let mut tail: Word = Vec::new();
        for (k, slot) in state.iter_mut().enumerate().skip(i + 1) {
            if *slot != 0 {
                tail.push((k, *slot));
                *slot = 0;
            }
        }
        state[i] += 1;
        let overflow = state[i] == p;
        if overflow {
            state[i] = 0;
        }
        // g_k^{g_i} = g_k [g_k, g_i]
        for &(k, a) in tail.iter().rev() {
            let w = self.comm_word(k, i);
            if w.is_empty() {
                stack.push((k, a));
            } else {
                for _ in 0..a {
                    stack.extend(w.iter().rev().copied());
                    stack.push((k, 1));
                }
            }
        }
        if overflow {
            stack.extend(self.power_word(i).iter().rev().copied());
        }
    }

    fn collect_or_panic(&self, state: &mut [u32], word: &[(usize, u32)]) {
        self.collect_onto(state, word)
            .expect("collection terminates for a validated presentation");
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let mut state = a.0.clone();
        self.collect_or_panic(&mut state, &b.to_word());
        GroupElement(state)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        let p = self.p();
        let mut r = a.0.clone();
        let mut inv = vec![0u32; self.m()];
        for i in 0..self.m() {
            if r[i] != 0 {
                let e = p - r[i];
                self.collect_or_panic(&mut r, &[(i, e)]);
                self.collect_or_panic(&mut inv, &[(i, e)]);
            }
        }
        GroupElement(inv)
    }

    pub fn pow(&self, a: &GroupElement, mut e: u64) -> GroupElement {
        let mut base = a.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `g^{-1} x g`.
    pub fn conjugate(&self, x: &GroupElement, g: &GroupElement) -> GroupElement {
        let mut state = self.inverse(g).0;
        self.collect_or_panic(&mut state, &x.to_word());
        self.collect_or_panic(&mut state, &g.to_word());
        GroupElement(state)
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(&self.inverse(&ba), &ab)
    }

    /// Order of `x`, found by repeated p-th powering.
    pub fn element_order(&self, x: &GroupElement) -> u64 {
        let mut order = 1u64;
        let mut y = x.clone();
        while !y.is_identity() {
            y = self.pow(&y, self.p() as u64);
            order *= self.p() as u64;
        }
        order
    }

    /// Runs the overlap tests for a power-commutator presentation and
    /// returns the first failing one.
    pub fn consistency_check(&self) -> Option<ConsistencyViolation> {
        let m = self.m();
        let p = self.p();
        let gen = |i: usize| [(i, 1u32)];
        let prod = |first: &[(usize, u32)], second: &[(usize, u32)]| -> Result<GroupElement> {
            let mut s = self.collect(first)?.0;
            self.collect_onto(&mut s, second)?;
            Ok(GroupElement(s))
        };
        let check = |kind: ConsistencyKind, idx: (usize, usize, usize), lhs: Result<GroupElement>, rhs: Result<GroupElement>| {
            match (lhs, rhs) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => Some(ConsistencyViolation {
                    kind,
                    indices: idx,
                    lhs: a.to_word(),
                    rhs: b.to_word(),
                }),
                _ => Some(ConsistencyViolation {
                    kind,
                    indices: idx,
                    lhs: Vec::new(),
                    rhs: Vec::new(),
                }),
            }
        };

        // (g_k g_j) g_i = g_k (g_j g_i), k > j > i
        for k in 0..m {
            for j in 0..k {
                for i in 0..j {
                    let lhs = self.collect(&[(k, 1), (j, 1)]).and_then(|kj| prod(&kj.to_word(), &gen(i)));
                    let rhs = self.collect(&[(j, 1), (i, 1)]).and_then(|ji| prod(&gen(k), &ji.to_word()));
                    if let Some(v) = check(ConsistencyKind::Associativity, (k, j, i), lhs, rhs) {
                        return Some(v);
                    }
                }
            }
        }
        // (g_j^p) g_i = g_j^(p-1) (g_j g_i), j > i
        for j in 0..m {
            for i in 0..j {
                let lhs = prod(self.power_word(j), &gen(i));
                let rhs = self
                    .collect(&[(j, 1), (i, 1)])
                    .and_then(|ji| prod(&[(j, p - 1)], &ji.to_word()));
                if let Some(v) = check(ConsistencyKind::PowerLeft, (j, j, i), lhs, rhs) {
                    return Some(v);
                }
            }
        }
        // g_j (g_i^p) = (g_j g_i) g_i^(p-1), j > i
        for j in 0..m {
            for i in 0..j {
                let lhs = prod(&gen(j), self.power_word(i));
                let rhs = self
                    .collect(&[(j, 1), (i, 1)])
                    .and_then(|ji| prod(&ji.to_word(), &[(i, p - 1)]));
                if let Some(v) = check(ConsistencyKind::PowerRight, (j, i, i), lhs, rhs) {
                    return Some(v);
                }
            }
        }
        // g_i^p g_i = g_i g_i^p
        for i in 0..m {
            let lhs = prod(self.power_word(i), &gen(i));
            let rhs = prod(&gen(i), self.power_word(i));
            if let Some(v) = check(ConsistencyKind::PowerSelf, (i, i, i), lhs, rhs) {
                return Some(v);
            }
        }
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConsistencyKind {
    Associativity,
    PowerLeft,
    PowerRight,
    PowerSelf,
}

/// A failing overlap: the two collected forms of one test word differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyViolation {
    pub kind: ConsistencyKind,
    /// 0-based generator indices of the test word.
    pub indices: (usize, usize, usize),
    pub lhs: Word,
    pub rhs: Word,
}

impl fmt::Display for ConsistencyViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b, c) = (self.indices.0 + 1, self.indices.1 + 1, self.indices.2 + 1);
        let test = match self.kind {
            ConsistencyKind::Associativity => format!("(g{a} g{b}) g{c} vs g{a} (g{b} g{c})"),
            ConsistencyKind::PowerLeft => format!("(g{a}^p) g{c} vs g{a}^(p-1) (g{a} g{c})"),
            ConsistencyKind::PowerRight => format!("g{a} (g{b}^p) vs (g{a} g{b}) g{b}^(p-1)"),
            ConsistencyKind::PowerSelf => format!("(g{a}^p) g{a} vs g{a} (g{a}^p)"),
        };
        write!(f, "{test}: {} != {}", format_word(&self.lhs), format_word(&self.rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::{builtin, parse_unchecked};

    /// D_8 as permutations of the square's vertices 0..4: g1 = reflection
    /// i -> -i, g2 = rotation i -> i+1, g3 = g2^2.
    fn d8_perm(x: &GroupElement) -> [usize; 4] {
        let refl = [0usize, 3, 2, 1];
        let rot = [1usize, 2, 3, 0];
        let mut perm = [0usize, 1, 2, 3];
        // apply factors left to right, acting on the right
        let apply = |perm: &mut [usize; 4], g: &[usize; 4]| {
            for v in perm.iter_mut() {
                *v = g[*v];
            }
        };
        for _ in 0..x.0[0] {
            apply(&mut perm, &refl);
        }
        for _ in 0..x.0[1] {
            apply(&mut perm, &rot);
        }
        for _ in 0..x.0[2] {
            apply(&mut perm, &rot);
            apply(&mut perm, &rot);
        }
        perm
    }

    #[test]
    fn d8_collection_matches_permutation_table() {
        let d8 = builtin("d8").unwrap();
        assert_eq!(d8.collect(&[(1, 1), (0, 1)]).unwrap(), GroupElement(vec![1, 1, 1]));
        let elems: Vec<GroupElement> = (0..8).map(|i| d8.element_at(i)).collect();
        let perms: Vec<[usize; 4]> = elems.iter().map(d8_perm).collect();
        // normal forms give 8 distinct permutations
        let mut sorted = perms.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
        for (a, pa) in elems.iter().zip(&perms) {
            for (b, pb) in elems.iter().zip(&perms) {
                let ab = d8.mul(a, b);
                let mut composed = *pa;
                for v in composed.iter_mut() {
                    *v = pb[*v];
                }
                assert_eq!(d8_perm(&ab), composed);
            }
        }
    }

    #[test]
    fn basic_collection() {
        let c4 = builtin("c4").unwrap();
        assert_eq!(c4.collect(&[(0, 1), (0, 1)]).unwrap(), GroupElement(vec![0, 1]));
        assert!(c4.collect(&[]).unwrap().is_identity());
        assert_eq!(c4.element_order(&c4.generator(0)), 4);
    }

    #[test]
    fn builtins_are_consistent() {
        for name in super::super::BUILTIN_NAMES {
            assert_eq!(builtin(name).unwrap().consistency_check(), None, "{name}");
        }
    }

    #[test]
    fn d8_associativity_oracle() {
        let d8 = builtin("d8").unwrap();
        let elems: Vec<GroupElement> = (0..8).map(|i| d8.element_at(i)).collect();
        for a in &elems {
            for b in &elems {
                for c in &elems {
                    assert_eq!(d8.mul(&d8.mul(a, b), c), d8.mul(a, &d8.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn broken_dihedral_presentation_is_reported() {
        let pres = parse_unchecked("pgroup\np 2\ngens 3\npow g2 = g3\ncomm g2 g1 = g2\n").unwrap();
        let v = pres.consistency_check().expect("violation expected");
        assert!(!v.to_string().is_empty());
        assert!(matches!(
            crate::pcgroup::parse_presentation("pgroup\np 2\ngens 3\npow g2 = g3\ncomm g2 g1 = g2\n"),
            Err(Error::InconsistentPresentation(_))
        ));
    }

    #[test]
    fn inverse_and_commutator() {
        let pres = builtin("jm14_f39").unwrap();
        for idx in (0..128).step_by(5) {
            let x = pres.element_at(idx);
            assert!(pres.mul(&x, &pres.inverse(&x)).is_identity());
            assert!(pres.mul(&pres.inverse(&x), &x).is_identity());
        }
        let g1 = pres.generator(0);
        let g2 = pres.generator(1);
        assert_eq!(pres.commutator(&g2, &g1), pres.generator(2));
    }
}
