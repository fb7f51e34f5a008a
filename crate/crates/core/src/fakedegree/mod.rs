//! Coadjoint orbits of algebra groups, the degree-one part of the fake
//! degree conjecture, and a brute-force oracle for small unit groups.

mod oracle;
mod profile;

pub use oracle::{brute_force_units, brute_force_units_with_guard, BruteForceReport, DEFAULT_ORACLE_GUARD};
pub use profile::{
    coadjoint_profile, coadjoint_profile_with_guard, fixed_point_count, OrbitProfile, DEFAULT_MAX_PROFILE,
};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::Result;
use crate::nilalgebra::NilpotentAlgebra;
use crate::unitgroup::UnitPcp;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Consistent,
    /// `|(1 + J)_ab|` is `ratio` times the number of fixed points.
    Violated { ratio: BigUint },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Violated { .. } => "VIOLATED",
        }
    }
}

/// Fixed points of `J*` against linear characters of `1 + J`.
#[derive(Clone, Debug)]
pub struct FakeDegreeReport {
    pub fixed_points: BigUint,
    pub ab_order: BigUint,
    pub verdict: Verdict,
    /// `(orbit count, brute-force class count)` when requested and within
    /// the guards.
    pub orbit_check: Option<(u64, u64)>,
}

pub fn fake_degree_report(a: &NilpotentAlgebra, max_gens: usize, compare_orbits: bool) -> Result<FakeDegreeReport> {
    let fixed_points = fixed_point_count(a);
    let ab_order = UnitPcp::with_guard(a, max_gens)?.abelianization()?.group.order()?;
    let verdict = if ab_order == fixed_points {
        Verdict::Consistent
    } else {
        let ratio = &ab_order / &fixed_points;
        if ratio.is_zero() || &ratio * &fixed_points != ab_order {
            return Err(crate::Error::NonIntegralRatio(format!("{ab_order} / {fixed_points}")));
        }
        Verdict::Violated { ratio }
    };
    let orbit_check = if compare_orbits {
        match (coadjoint_profile(a), brute_force_units(a)) {
            (Ok(prof), Ok(bf)) => Some((prof.orbit_total(), bf.class_count)),
            (Err(e), _) | (_, Err(e)) if e.is_guard() => None,
            (Err(e), _) | (_, Err(e)) => return Err(e),
        }
    } else {
        None
    };
    Ok(FakeDegreeReport {
        fixed_points,
        ab_order,
        verdict,
        orbit_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilalgebra::{augmentation_ideal, parse_algebra};
    use crate::pcgroup::builtin;
    use crate::smallfield::make_field;
    use crate::unitgroup::DEFAULT_MAX_GENS;

    #[test]
    fn verdicts() {
        let f = make_field(2, 1).unwrap();
        let jm = augmentation_ideal(&builtin("jm14_f39").unwrap(), &f).unwrap();
        let r = fake_degree_report(&jm, DEFAULT_MAX_GENS, true).unwrap();
        assert_eq!(r.fixed_points, BigUint::from(1u64 << 25));
        assert_eq!(r.ab_order, BigUint::from(1u64 << 26));
        assert_eq!(r.verdict, Verdict::Violated { ratio: 2u32.into() });
        assert_eq!(r.orbit_check, None);

        let q8 = augmentation_ideal(&builtin("q8").unwrap(), &f).unwrap();
        let r = fake_degree_report(&q8, DEFAULT_MAX_GENS, false).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert_eq!(r.ab_order, BigUint::from(16u32));

        let heis = parse_algebra("algebra\np 3\nn 1\ndim 3\nb1*b3 = b2\n").unwrap();
        let r = fake_degree_report(&heis, DEFAULT_MAX_GENS, true).unwrap();
        assert_eq!(r.verdict, Verdict::Consistent);
        assert_eq!(r.orbit_check, Some((11, 11)));
    }
}
