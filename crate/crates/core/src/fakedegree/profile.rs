use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::nilalgebra::space::Span;
use crate::nilalgebra::NilpotentAlgebra;
use crate::smallfield::FieldElement;

pub const DEFAULT_MAX_PROFILE: u64 = 1 << 24;

/// Orbit sizes of the coadjoint action of `1 + J` on `J*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitProfile {
    pub q: u64,
    /// `s -> N_s`, the number of functionals in orbits of size `s`.
    pub counts: BTreeMap<u64, u64>,
    /// `s -> N_s / s`, the number of orbits of size `s`.
    pub orbit_counts: BTreeMap<u64, u64>,
    /// `sqrt(s) -> N_s / s`.
    pub fake_degrees: BTreeMap<u64, u64>,
}

impl OrbitProfile {
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn orbit_total(&self) -> u64 {
        self.orbit_counts.values().sum()
    }

    pub fn fixed_points(&self) -> u64 {
        self.counts.get(&1).copied().unwrap_or(0)
    }
}

pub fn coadjoint_profile(a: &NilpotentAlgebra) -> Result<OrbitProfile> {
    coadjoint_profile_with_guard(a, DEFAULT_MAX_PROFILE)
}

/// Enumerates every `lambda` in `J*` and ranks the form
/// `B_lambda(b_i, b_j) = lambda(b_i b_j - b_j b_i)`.
pub fn coadjoint_profile_with_guard(a: &NilpotentAlgebra, guard: u64) -> Result<OrbitProfile> {
    let f = a.field();
    let q = f.q();
    let d = a.dim();
    let total = (q as u128).pow(d as u32);
    if total > guard as u128 {
        return Err(Error::ProfileGuardExceeded(format!("q^dim = {q}^{d} exceeds {guard}")));
    }
    let total = total as u64;

    let mut brackets: Vec<Vec<(usize, FieldElement)>> = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            let v = a.lie_bracket(&a.basis_element(i), &a.basis_element(j));
            brackets.push(
                v.0.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, &c)| (k, c))
                    .collect(),
            );
        }
    }
    let prime = if f.n() == 1 && f.p() < 256 { Some(f.p() as u8) } else { None };

    let ranks = (0..total)
        .into_par_iter()
        .fold(
            || vec![0u64; d + 1],
            |mut acc, t| {
                let mut lambda = vec![FieldElement::ZERO; d];
                let mut x = t;
                for l in lambda.iter_mut() {
                    *l = FieldElement(x % q);
                    x /= q;
                }
                let mut span = Span::new(f, d, prime);
                for i in 0..d {
                    let row: Vec<FieldElement> = (0..d)
                        .map(|j| {
                            brackets[i * d + j]
                                .iter()
                                .fold(FieldElement::ZERO, |s, &(k, c)| f.add(s, f.mul(lambda[k], c)))
                        })
                        .collect();
                    if row.iter().any(|c| !c.is_zero()) {
                        span.insert(row);
                    }
                }
                acc[span.rank()] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; d + 1],
            |mut x, y| {
                for (a, b) in x.iter_mut().zip(y) {
                    *a += b;
                }
                x
            },
        );

    let mut counts = BTreeMap::new();
    let mut orbit_counts = BTreeMap::new();
    let mut fake_degrees = BTreeMap::new();
    for (r, &n) in ranks.iter().enumerate() {
        if n == 0 {
            continue;
        }
        if r % 2 == 1 {
            return Err(Error::InternalInconsistency(format!("alternating form of odd rank {r}")));
        }
        let s = q.pow(r as u32);
        if n % s != 0 {
            return Err(Error::InternalInconsistency(format!("orbit size {s} does not divide {n}")));
        }
        counts.insert(s, n);
        orbit_counts.insert(s, n / s);
        fake_degrees.insert(q.pow(r as u32 / 2), n / s);
    }
    Ok(OrbitProfile {
        q,
        counts,
        orbit_counts,
        fake_degrees,
    })
}

/// `|J / [J, J]_L| = q^(dim - dim [J, J]_L)`.
pub fn fixed_point_count(a: &NilpotentAlgebra) -> BigUint {
    BigUint::from(a.field().q()).pow((a.dim() - a.lie_commutator_dim()) as u32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilalgebra::{augmentation_ideal, parse_algebra};
    use crate::pcgroup::builtin;
    use crate::smallfield::make_field;

    fn heis(p: u64) -> NilpotentAlgebra {
        parse_algebra(&format!("algebra\np {p}\nn 1\ndim 3\nb1*b3 = b2\n")).unwrap()
    }

    #[test]
    fn heisenberg_profiles() {
        let p3 = coadjoint_profile(&heis(3)).unwrap();
        assert_eq!(p3.fake_degrees, BTreeMap::from([(1, 9), (3, 2)]));
        assert_eq!(p3.fixed_points(), 9);
        assert_eq!(p3.total(), 27);
        let p2 = coadjoint_profile(&heis(2)).unwrap();
        assert_eq!(p2.fake_degrees, BTreeMap::from([(1, 4), (2, 1)]));
    }

    #[test]
    fn zero_algebra_is_fixed() {
        let a = parse_algebra("algebra\np 2\nn 2\ndim 3\n").unwrap();
        let prof = coadjoint_profile(&a).unwrap();
        assert_eq!(prof.counts, BTreeMap::from([(1, 64)]));
        assert_eq!(fixed_point_count(&a), BigUint::from(64u32));
    }

    #[test]
    fn fixed_points_two_ways() {
        let f = make_field(2, 1).unwrap();
        for name in ["d8", "q8", "c2xc2"] {
            let a = augmentation_ideal(&builtin(name).unwrap(), &f).unwrap();
            let prof = coadjoint_profile(&a).unwrap();
            assert_eq!(BigUint::from(prof.fixed_points()), fixed_point_count(&a));
        }
    }

    #[test]
    fn guard() {
        let f = make_field(2, 1).unwrap();
        let a = augmentation_ideal(&builtin("jm14_f39").unwrap(), &f).unwrap();
        assert!(matches!(coadjoint_profile(&a), Err(Error::ProfileGuardExceeded(_))));
    }
}
