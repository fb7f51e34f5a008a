use crate::error::{Error, Result};
use crate::linalg::{check_prime, FpVec, TriangularBasis};
use crate::nilalgebra::{AlgebraElement, NilpotentAlgebra};
use crate::pcgroup::{PcPresentation, Word};
use crate::smallfield::FieldElement;

/// Default limit on the number of generators `n * dim`.
pub const DEFAULT_MAX_GENS: usize = 512;

/// Polycyclic structure of `1 + J` along the power filtration.
///
/// Generator `g = i * n + j` is `1 + lambda_j b_i` where `b_i` runs over the
/// adapted basis and `lambda_j = x^j` over the power basis of `F_q`. Inside,
/// elements of `J` are vectors over `F_p` in these coordinates, so generator
/// `g` is the unit vector `e_g`.
pub struct UnitPcp {
    algebra: NilpotentAlgebra,
    p: u8,
    n: usize,
    num_gens: usize,
    level_of: Vec<usize>,
    nil_index: usize,
    /// `table[s * N + t] = e_s e_t`
    table: Vec<FpVec>,
    /// `inv[g]`: `(1 + e_g)^{-1} - 1`
    inv: Vec<FpVec>,
    /// `inv_cols[g][t] = inv[g] e_t`
    inv_cols: Vec<Vec<FpVec>>,
    /// Generators in restricted original coordinates.
    basis: TriangularBasis,
}

impl UnitPcp {
    pub fn new(algebra: &NilpotentAlgebra) -> Result<UnitPcp> {
        UnitPcp::with_guard(algebra, DEFAULT_MAX_GENS)
    }

    pub fn with_guard(algebra: &NilpotentAlgebra, max_gens: usize) -> Result<UnitPcp> {
        let field = algebra.field();
        let p = check_prime(field.p())?;
        let n = field.n();
        let d = algebra.dim();
        let num_gens = n * d;
        if num_gens > max_gens {
            return Err(Error::GeneratorGuardExceeded(format!(
                "unit group needs {num_gens} generators, limit is {max_gens}"
            )));
        }
        let filt = algebra.power_filtration();
        let rebased = algebra.rebase_adapted()?;
        let lambdas: Vec<FieldElement> = (0..n)
            .map(|j| {
                let mut c = vec![0u64; n];
                c[j] = 1;
                field.from_coords(&c).expect("power basis element")
            })
            .collect();
        let restrict = |coords: &[FieldElement]| -> FpVec {
            let mut v = FpVec::zeros(p, num_gens);
            for (i, &a) in coords.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (r, c) in field.coords(a).into_iter().enumerate() {
                    if c != 0 {
                        v.set(i * n + r, c as u8);
                    }
                }
            }
            v
        };

        let mut gens = Vec::with_capacity(num_gens);
        let mut level_of = Vec::with_capacity(num_gens);
        for (i, b) in filt.adapted_basis.iter().enumerate() {
            for &lam in &lambdas {
                let scaled: Vec<FieldElement> = b.0.iter().map(|&c| field.mul(lam, c)).collect();
                gens.push(restrict(&scaled));
                level_of.push(filt.level_of[i]);
            }
        }
        let basis = TriangularBasis::new(gens)?;

        let nil_index = algebra.nil_index();
        let mut lam_prod = vec![FieldElement::ZERO; n * n];
        for a in 0..n {
            for b in 0..n {
                lam_prod[a * n + b] = field.mul(lambdas[a], lambdas[b]);
            }
        }
        let mut table = Vec::with_capacity(num_gens * num_gens);
        for s in 0..num_gens {
            let (i, j) = (s / n, s % n);
            for t in 0..num_gens {
                let (i2, j2) = (t / n, t % n);
                let mut v = FpVec::zeros(p, num_gens);
                if level_of[s] + level_of[t] < nil_index {
                    let lam = lam_prod[j * n + j2];
                    for &(k, c) in rebased.product_terms(i, i2) {
                        let coef = field.mul(lam, c);
                        for (r, x) in field.coords(coef).into_iter().enumerate() {
                            if x != 0 {
                                v.set(k * n + r, x as u8);
                            }
                        }
                    }
                }
                table.push(v);
            }
        }

        let mut pcp = UnitPcp {
            algebra: algebra.clone(),
            p,
            n,
            num_gens,
            level_of,
            nil_index,
            table,
            inv: Vec::new(),
            inv_cols: Vec::new(),
            basis,
        };
        let inv: Vec<FpVec> = (0..num_gens).map(|g| pcp.inverse_of_generator(g)).collect();
        let inv_cols = (0..num_gens)
            .map(|g| {
                (0..num_gens)
                    .map(|t| {
                        if pcp.level_of[g] + pcp.level_of[t] < nil_index {
                            pcp.mul_right_basis(&inv[g], t)
                        } else {
                            FpVec::zeros(p, num_gens)
                        }
                    })
                    .collect()
            })
            .collect();
        pcp.inv = inv;
        pcp.inv_cols = inv_cols;
        Ok(pcp)
    }

    pub fn algebra(&self) -> &NilpotentAlgebra {
        &self.algebra
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    /// `N = n * dim`.
    pub fn num_generators(&self) -> usize {
        self.num_gens
    }

    pub fn level_of(&self, g: usize) -> usize {
        self.level_of[g]
    }

    pub fn levels(&self) -> &[usize] {
        &self.level_of
    }

    pub fn nil_index(&self) -> usize {
        self.nil_index
    }

    /// `y e_t`
    fn mul_right_basis(&self, y: &FpVec, t: usize) -> FpVec {
        let n = self.num_gens;
        let mut out = FpVec::zeros(self.p, n);
        y.for_each_nonzero(|s, c| out.add_scaled(&self.table[s * n + t], c));
        out
    }

    fn inverse_of_generator(&self, g: usize) -> FpVec {
        let minus = FpVec::unit(self.p, self.num_gens, g).negated();
        let mut term = minus.clone();
        let mut acc = FpVec::zeros(self.p, self.num_gens);
        while !term.is_zero() {
            acc.add(&term);
            term = self.mul_right_basis(&term, g);
            term = term.negated();
        }
        acc
    }

    /// `(1 + e_g)^{-1} (1 + w) - 1`, in place.
    fn strip(&self, w: &mut FpVec, g: usize) {
        let mut next = w.clone();
        next.add(&self.inv[g]);
        let cols = &self.inv_cols[g];
        w.for_each_nonzero(|t, c| next.add_scaled(&cols[t], c));
        *w = next;
    }

    /// Exponents `e` with `1 + w = prod_g (1 + e_g)^{e_g}` (adapted
    /// coordinates).
    pub(crate) fn sift_vec(&self, mut w: FpVec) -> Vec<u32> {
        let mut exps = vec![0u32; self.num_gens];
        let mut pos = 0;
        while let Some(g) = w.first_nonzero_from(pos) {
            let c = w.get(g);
            exps[g] = c as u32;
            for _ in 0..c {
                self.strip(&mut w, g);
            }
            debug_assert_eq!(w.get(g), 0);
            pos = g + 1;
        }
        exps
    }

    /// `prod_g (1 + e_g)^{e_g} - 1` in adapted coordinates.
    pub(crate) fn rebuild_vec(&self, exps: &[u32]) -> FpVec {
        let mut w = FpVec::zeros(self.p, self.num_gens);
        for (g, &e) in exps.iter().enumerate() {
            for _ in 0..e {
                // (1 + w)(1 + e_g) = 1 + w + e_g + w e_g
                let mut next = self.mul_right_basis(&w, g);
                next.add(&w);
                next.add_at(g, 1);
                w = next;
            }
        }
        w
    }

    /// Adapted `F_p` coordinates of an algebra element.
    pub fn to_adapted(&self, u: &AlgebraElement) -> FpVec {
        let field = self.algebra.field();
        let mut v = FpVec::zeros(self.p, self.num_gens);
        for (i, &a) in u.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (r, c) in field.coords(a).into_iter().enumerate() {
                if c != 0 {
                    v.set(i * self.n + r, c as u8);
                }
            }
        }
        let coords = self.basis.solve(&v).expect("generators span the algebra");
        FpVec::from_entries(self.p, &coords)
    }

    pub fn from_adapted(&self, w: &FpVec) -> AlgebraElement {
        let field = self.algebra.field();
        let n = self.n;
        let mut acc = FpVec::zeros(self.p, self.num_gens);
        w.for_each_nonzero(|g, c| acc.add_scaled(&self.basis.vectors()[g], c));
        let d = self.algebra.dim();
        AlgebraElement(
            (0..d)
                .map(|i| {
                    let coords: Vec<u64> = (0..n).map(|r| acc.get(i * n + r) as u64).collect();
                    field.from_coords(&coords).expect("valid coordinates")
                })
                .collect(),
        )
    }

    /// The element `u_g` (generator `g` is `1 + u_g`).
    pub fn generator(&self, g: usize) -> AlgebraElement {
        self.from_adapted(&FpVec::unit(self.p, self.num_gens, g))
    }

    /// Normal-form exponents of the unit `1 + u`.
    pub fn sift(&self, u: &AlgebraElement) -> Vec<u32> {
        self.sift_vec(self.to_adapted(u))
    }

    /// `u` with `1 + u = prod_g (1 + u_g)^{e_g}`.
    pub fn rebuild(&self, exps: &[u32]) -> AlgebraElement {
        self.from_adapted(&self.rebuild_vec(exps))
    }

    fn to_word(exps: &[u32]) -> Word {
        exps.iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(k, &e)| (k, e))
            .collect()
    }

    /// Exponents of `(1 + u_g)^p`.
    pub fn power_exponents(&self, g: usize) -> Vec<u32> {
        let mut y = FpVec::unit(self.p, self.num_gens, g);
        for _ in 1..self.p {
            y = self.mul_right_basis(&y, g);
        }
        self.sift_vec(y)
    }

    /// Exponents of `[1 + u_j, 1 + u_i]`, or `None` when trivial.
    pub fn comm_exponents(&self, j: usize, i: usize) -> Option<Vec<u32>> {
        if self.level_of[i] + self.level_of[j] >= self.nil_index {
            return None;
        }
        let n = self.num_gens;
        let mut c = self.table[j * n + i].clone();
        c.sub(&self.table[i * n + j]);
        if c.is_zero() {
            return None;
        }
        // (1 + v_j)(1 + v_i) c
        let mut d1 = c.clone();
        c.for_each_nonzero(|t, x| d1.add_scaled(&self.inv_cols[i][t], x));
        let mut d2 = d1.clone();
        d1.for_each_nonzero(|t, x| d2.add_scaled(&self.inv_cols[j][t], x));
        Some(self.sift_vec(d2))
    }

    pub fn power_word(&self, g: usize) -> Word {
        Self::to_word(&self.power_exponents(g))
    }

    pub fn comm_word(&self, j: usize, i: usize) -> Word {
        self.comm_exponents(j, i).map(|e| Self::to_word(&e)).unwrap_or_default()
    }

    /// The abstract power-commutator presentation (all relation words).
    pub fn presentation(&self) -> PcPresentation {
        let n = self.num_gens;
        let power = (0..n).map(|g| self.power_word(g)).collect();
        let comm = (0..n).map(|j| (0..j).map(|i| self.comm_word(j, i)).collect()).collect();
        PcPresentation::from_parts_unchecked(self.p as u32, n, power, comm)
    }
}
