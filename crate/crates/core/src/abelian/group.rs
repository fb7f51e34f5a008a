use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::snf::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

/// A finitely generated abelian group `C_{d_1} x ... x C_{d_r}` with
/// `d_1 | d_2 | ... | d_r`; a factor `0` is an infinite cyclic factor.
///
/// When the group arises as a cokernel it also remembers how the original
/// generators map to invariant-factor coordinates and back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    factors: Vec<u64>,
    /// `projection[g][i]`: coordinate `i` of original generator `g`.
    projection: Vec<Vec<BigInt>>,
    /// `generators[i]`: invariant generator `i` in original coordinates.
    generators: Vec<Vec<BigInt>>,
}

impl AbelianGroup {
    pub fn trivial() -> AbelianGroup {
        AbelianGroup {
            factors: Vec::new(),
            projection: Vec::new(),
            generators: Vec::new(),
        }
    }

    /// The group with the given invariant factors, generated by its own
    /// invariant-factor basis. Factors equal to 1 are dropped.
    pub fn from_factors(factors: &[u64]) -> Result<AbelianGroup> {
        let mut fs: Vec<u64> = factors.iter().copied().filter(|&d| d != 1).collect();
        let ok = fs.windows(2).all(|w| w[1] == 0 || (w[0] != 0 && w[1] % w[0] == 0));
        if !ok {
            // not a divisibility chain: normalize through the cokernel
            let diag: Vec<BigInt> = fs.iter().map(|&d| BigInt::from(d)).collect();
            return cokernel(&IntMatrix::diagonal(&diag));
        }
        fs.shrink_to_fit();
        let r = fs.len();
        let unit = |i: usize| -> Vec<BigInt> {
            (0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()
        };
        Ok(AbelianGroup {
            factors: fs,
            projection: (0..r).map(unit).collect(),
            generators: (0..r).map(unit).collect(),
        })
    }

    pub(crate) fn from_parts(factors: Vec<u64>, projection: Vec<Vec<BigInt>>, generators: Vec<Vec<BigInt>>) -> Self {
        AbelianGroup {
            factors,
            projection,
            generators,
        }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// Number of invariant factors.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.factors.iter().all(|&d| d != 0)
    }

    /// Number of original generators the group was presented with.
    pub fn num_original_generators(&self) -> usize {
        self.projection.len()
    }

    pub fn projection(&self) -> &[Vec<BigInt>] {
        &self.projection
    }

    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn order(&self) -> Result<BigUint> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        Ok(self.factors.iter().map(|&d| BigUint::from(d)).product())
    }

    pub fn exponent(&self) -> Result<u64> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup);
        }
        Ok(self.factors.last().copied().unwrap_or(1))
    }

    /// Order of the `m`-torsion subgroup, `prod gcd(d_i, m)`.
    pub fn m_torsion_order(&self, m: u64) -> BigUint {
        self.factors
            .iter()
            .map(|&d| BigUint::from(if d == 0 { m } else { d.gcd(&m) }))
            .product()
    }

    pub fn is_isomorphic(&self, other: &AbelianGroup) -> bool {
        self.factors == other.factors
    }

    /// Invariant-factor coordinates of an element given in original
    /// coordinates, reduced modulo the factors.
    pub fn project(&self, coords: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(coords.len(), self.projection.len(), "coordinate length mismatch");
        let mut out = vec![BigInt::zero(); self.rank()];
        for (c, row) in coords.iter().zip(&self.projection) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(row) {
                *o += c * x;
            }
        }
        self.reduce(&mut out);
        out
    }

    /// Reduces invariant-factor coordinates into `[0, d_i)`.
    pub fn reduce(&self, coords: &mut [BigInt]) {
        for (x, &d) in coords.iter_mut().zip(&self.factors) {
            if d != 0 {
                *x = x.mod_floor(&BigInt::from(d));
            }
        }
    }

    /// Whether the element with invariant-factor coordinates `x` is a
    /// `k`-th multiple (a `k`-th power, multiplicatively).
    pub fn is_multiple_of(&self, x: &[BigInt], k: u64) -> bool {
        x.iter().zip(&self.factors).all(|(xi, &d)| {
            let g = if d == 0 { k } else { d.gcd(&k) };
            xi.is_multiple_of(&BigInt::from(g))
        })
    }

    /// Text form like `C_2^13 x C_4^5 x C_8`; the trivial group is `1`.
    pub fn structure_string(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let d = self.factors[i];
            let run = self.factors[i..].iter().take_while(|&&x| x == d).count();
            let base = if d == 0 { "Z".to_string() } else { format!("C_{d}") };
            parts.push(if run == 1 { base } else { format!("{base}^{run}") });
            i += run;
        }
        parts.join(" x ")
    }
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.structure_string())
    }
}

/// The abelian group `Z^cols / rowspace(m)`.
pub fn cokernel(m: &IntMatrix) -> Result<AbelianGroup> {
    let snf = smith_normal_form(m);
    let c = m.cols();
    let diag = snf.diagonal();
    let mut factors = Vec::new();
    let mut keep = Vec::new();
    for k in 0..c {
        let d = diag.get(k).cloned().unwrap_or_else(BigInt::zero);
        if d.is_one() {
            continue;
        }
        factors.push(d.to_u64().ok_or(Error::FactorOverflow)?);
        keep.push(k);
    }
    let projection = (0..c)
        .map(|g| {
            keep.iter()
                .zip(&factors)
                .map(|(&k, &d)| {
                    let x = snf.v.get(g, k).clone();
                    if d == 0 {
                        x
                    } else {
                        x.mod_floor(&BigInt::from(d))
                    }
                })
                .collect()
        })
        .collect();
    let generators = keep.iter().map(|&k| snf.v_inv.row(k).to_vec()).collect();
    Ok(AbelianGroup {
        factors,
        projection,
        generators,
    })
}

/// Result of [`hom_kernel`].
#[derive(Clone, Debug)]
pub struct HomKernel {
    pub group: AbelianGroup,
    /// Kernel invariant generators in the source's invariant-factor
    /// coordinates, aligned with `group.factors()`.
    pub generators: Vec<Vec<BigInt>>,
}

/// Kernel of the homomorphism `a -> b` whose matrix `t` (rows indexed by
/// the invariant factors of `b`, columns by those of `a`) sends generator
/// `i` of `a` to column `i`.
pub fn hom_kernel(a: &AbelianGroup, b: &AbelianGroup, t: &[Vec<BigInt>]) -> Result<HomKernel> {
    let ra = a.rank();
    let rb = b.rank();
    if t.len() != rb || t.iter().any(|r| r.len() != ra) {
        return Err(Error::InternalInconsistency("homomorphism matrix has the wrong shape".into()));
    }
    let reduce_b = |j: usize, x: &BigInt| -> BigInt {
        if b.factors[j] == 0 {
            x.clone()
        } else {
            x.mod_floor(&BigInt::from(b.factors[j]))
        }
    };
    for (i, &d) in a.factors.iter().enumerate() {
        if d != 0 && (0..rb).any(|j| !reduce_b(j, &(&t[j][i] * BigInt::from(d))).is_zero()) {
            return Err(Error::IllDefinedMap(i));
        }
    }
    if ra == 0 {
        return Ok(HomKernel {
            group: AbelianGroup::trivial(),
            generators: Vec::new(),
        });
    }

    // (x, y) with x T^t + y diag(b) = 0; the x parts span the lattice L.
    let mut stacked = IntMatrix::zeros(ra + rb, rb);
    for i in 0..ra {
        for j in 0..rb {
            stacked.set(i, j, t[j][i].clone());
        }
    }
    for j in 0..rb {
        stacked.set(ra + j, j, BigInt::from(b.factors[j]));
    }
    let snf = smith_normal_form(&stacked);
    let rank = snf.diagonal().iter().filter(|d| !d.is_zero()).count();
    let lattice_gens: Vec<Vec<BigInt>> = (rank..ra + rb).map(|k| snf.u.row(k)[..ra].to_vec()).collect();

    // basis of L: rows s_k * w_k of the Smith form of the generators
    let lg = IntMatrix::from_rows(ra, lattice_gens);
    let snf_l = smith_normal_form(&lg);
    let s: Vec<BigInt> = snf_l.diagonal().into_iter().filter(|d| !d.is_zero()).collect();
    let lrank = s.len();
    let basis: Vec<Vec<BigInt>> = (0..lrank)
        .map(|k| snf_l.v_inv.row(k).iter().map(|x| x * &s[k]).collect())
        .collect();

    // relations of A restricted to L, in the L-basis: (a_i e_i) V / s
    let mut rel = Vec::new();
    for (i, &d) in a.factors.iter().enumerate() {
        if d == 0 {
            continue;
        }
        let d = BigInt::from(d);
        let mut row = Vec::with_capacity(lrank);
        for k in 0..lrank {
            let num = &d * snf_l.v.get(i, k);
            let (q, r) = num.div_rem(&s[k]);
            if !r.is_zero() {
                return Err(Error::InternalInconsistency("relation of A not in the kernel lattice".into()));
            }
            row.push(q);
        }
        for k in lrank..ra {
            if !snf_l.v.get(i, k).is_zero() {
                return Err(Error::InternalInconsistency("relation of A not in the kernel lattice".into()));
            }
        }
        rel.push(row);
    }
    let group = cokernel(&IntMatrix::from_rows(lrank, rel))?;
    let generators = group
        .generators()
        .iter()
        .map(|g| {
            let mut v = vec![BigInt::zero(); ra];
            for (c, b_row) in g.iter().zip(&basis) {
                for (o, x) in v.iter_mut().zip(b_row) {
                    *o += c * x;
                }
            }
            a.reduce(&mut v);
            v
        })
        .collect();
    Ok(HomKernel { group, generators })
}

/// Applies `t` to invariant-factor coordinates of `a`, landing in `b`.
pub fn apply_hom(b: &AbelianGroup, t: &[Vec<BigInt>], x: &[BigInt]) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = t
        .iter()
        .map(|row| row.iter().zip(x).map(|(r, c)| r * c).sum())
        .collect();
    b.reduce(&mut out);
    out
}

/// `log_p(x)` when `x` is a power of `p`.
pub fn p_power_log(x: &BigUint, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let mut x = x.clone();
    let p = BigUint::from(p);
    let mut k = 0;
    while !x.is_one() {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return None;
        }
        x = q;
        k += 1;
    }
    Some(k)
}
