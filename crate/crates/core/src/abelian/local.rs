//! Cokernels over `Z/p^k`, for relation matrices with many rows whose
//! cokernel is known to have exponent dividing `p^k`.

use num_bigint::BigInt;

use super::group::AbelianGroup;
use crate::error::{Error, Result};

/// Incremental echelon form of a submodule of `(Z/p^k)^n`. Each pivot row
/// has leading entry `p^v` and is closed under the torsion multiple
/// `p^(k-v)` row.
pub struct PowerLattice {
    p: u64,
    k: u32,
    modulus: u64,
    n: usize,
    pivots: Vec<Option<Vec<u64>>>,
    pivot_val: Vec<u32>,
    full_units: usize,
}

impl PowerLattice {
    pub fn new(p: u64, k: u32, n: usize) -> Result<PowerLattice> {
        let modulus = p
            .checked_pow(k)
            .filter(|&m| m < (1 << 31))
            .ok_or_else(|| Error::InternalInconsistency(format!("modulus {p}^{k} too large")))?;
        Ok(PowerLattice {
            p,
            k,
            modulus,
            n,
            pivots: vec![None; n],
            pivot_val: vec![0; n],
            full_units: 0,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// True once every column has a unit pivot (the lattice is everything).
    pub fn is_full(&self) -> bool {
        self.full_units == self.n
    }

    fn valuation(&self, mut x: u64) -> u32 {
        let mut v = 0;
        while x.is_multiple_of(self.p) && v < self.k {
            x /= self.p;
            v += 1;
        }
        v
    }

    fn inv_unit(&self, u: u64) -> u64 {
        // u coprime to p; solve by extended Euclid
        let (mut a, mut b) = (u as i64, self.modulus as i64);
        let (mut x0, mut x1) = (1i64, 0i64);
        while b != 0 {
            let q = a / b;
            (a, b) = (b, a - q * b);
            (x0, x1) = (x1, x0 - q * x1);
        }
        x0.rem_euclid(self.modulus as i64) as u64
    }

    fn scale(&self, row: &mut [u64], c: u64) {
        for x in row.iter_mut() {
            *x = *x * c % self.modulus;
        }
    }

    /// `row -= c * piv` starting at column `from`.
    fn sub_scaled(&self, row: &mut [u64], piv: &[u64], c: u64, from: usize) {
        let m = self.modulus;
        let neg = (m - c % m) % m;
        for (x, &y) in row[from..].iter_mut().zip(&piv[from..]) {
            if y != 0 {
                *x = (*x + neg * y) % m;
            }
        }
    }

    /// Adds a relation given as sparse `(column, value)` entries.
    pub fn insert_sparse(&mut self, entries: &[(usize, i64)]) {
        if self.is_full() {
            return;
        }
        let mut row = vec![0u64; self.n];
        let m = self.modulus as i64;
        for &(c, v) in entries {
            row[c] = ((row[c] as i64 + v).rem_euclid(m)) as u64;
        }
        self.insert(row);
    }

    pub fn insert(&mut self, row: Vec<u64>) {
        let mut work = vec![(row, 0usize)];
        while let Some((mut row, mut c)) = work.pop() {
            loop {
                let Some(col) = (c..self.n).find(|&j| row[j] != 0) else {
                    break;
                };
                c = col;
                let x = row[c];
                let v = self.valuation(x);
                let pv = self.p.pow(v);
                match &self.pivots[c] {
                    Some(piv) if v >= self.pivot_val[c] => {
                        let f = x / self.p.pow(self.pivot_val[c]);
                        self.sub_scaled(&mut row, piv, f, c);
                        debug_assert_eq!(row[c], 0);
                        c += 1;
                    }
                    _ => {
                        let u = self.inv_unit(x / pv);
                        self.scale(&mut row, u);
                        if v > 0 {
                            let mut t = row.clone();
                            self.scale(&mut t, self.p.pow(self.k - v));
                            work.push((t, c + 1));
                        } else {
                            self.full_units += 1;
                        }
                        if let Some(mut old) = self.pivots[c].take() {
                            let w = self.pivot_val[c];
                            if w == 0 {
                                self.full_units -= 1;
                            }
                            self.sub_scaled(&mut old, &row, self.p.pow(w - v), c);
                            work.push((old, c + 1));
                        }
                        self.pivots[c] = Some(row);
                        self.pivot_val[c] = v;
                        break;
                    }
                }
            }
        }
    }

    /// Smith form over `Z/p^k`; the result presents `(Z/p^k)^n / L` with
    /// projections and generators for the standard basis.
    pub fn into_group(self) -> Result<AbelianGroup> {
        let n = self.n;
        let m = self.modulus;
        let mut a: Vec<Vec<u64>> = self.pivots.iter().flatten().cloned().collect();
        let mut v: Vec<Vec<u64>> = (0..n).map(|i| unit(n, i)).collect();
        let mut v_inv: Vec<Vec<u64>> = (0..n).map(|i| unit(n, i)).collect();
        let mut vals = Vec::new();
        let rows = a.len();
        for t in 0..rows {
            let mut best: Option<(usize, usize, u32)> = None;
            'search: for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 {
                        let val = self.valuation(x);
                        if best.is_none_or(|b| val < b.2) {
                            best = Some((i, j, val));
                            if val == 0 {
                                break 'search;
                            }
                        }
                    }
                }
            }
            let Some((bi, bj, val)) = best else { break };
            a.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
                v_inv.swap(t, bj);
            }
            let pv = self.p.pow(val);
            let u = self.inv_unit(a[t][t] / pv);
            self.scale(&mut a[t], u);
            let (head, tail) = a.split_at_mut(t + 1);
            let prow = &head[t];
            for row in tail.iter_mut() {
                if row[t] != 0 {
                    let f = row[t] / pv;
                    self.sub_scaled(row, prow, f, t);
                }
            }
            // column operations only touch row t of `a`
            for j in t + 1..n {
                let x = a[t][j];
                if x == 0 {
                    continue;
                }
                let f = x / pv;
                a[t][j] = 0;
                let neg = (m - f) % m;
                for row in v.iter_mut() {
                    if row[t] != 0 {
                        row[j] = (row[j] + neg * row[t]) % m;
                    }
                }
                // row_t(v_inv) += f * row_j(v_inv)
                let (lo, hi) = if t < j { v_inv.split_at_mut(j) } else { unreachable!() };
                let src = &hi[0];
                for (d, &s) in lo[t].iter_mut().zip(src) {
                    if s != 0 {
                        *d = (*d + f * s) % m;
                    }
                }
            }
            vals.push(val);
        }
        vals.resize(n, self.k);

        let mut factors = Vec::new();
        let mut keep = Vec::new();
        for (t, &val) in vals.iter().enumerate() {
            if val > 0 {
                factors.push(self.p.pow(val));
                keep.push(t);
            }
        }
        let projection = (0..n)
            .map(|g| {
                keep.iter()
                    .zip(&factors)
                    .map(|(&t, &d)| BigInt::from(v[g][t] % d))
                    .collect()
            })
            .collect();
        let generators = keep
            .iter()
            .map(|&t| v_inv[t].iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        Ok(AbelianGroup::from_parts(factors, projection, generators))
    }
}

fn unit(n: usize, i: usize) -> Vec<u64> {
    let mut r = vec![0; n];
    r[i] = 1;
    r
}

/// Cokernel of sparse integer relations on `n` generators, assuming the
/// result has exponent dividing `p^k`.
pub fn cokernel_mod_prime_power(p: u64, k: u32, n: usize, rows: &[Vec<(usize, i64)>]) -> Result<AbelianGroup> {
    let mut lat = PowerLattice::new(p, k, n)?;
    for r in rows {
        lat.insert_sparse(r);
    }
    lat.into_group()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::{cokernel, IntMatrix};
    use proptest::prelude::*;

    #[test]
    fn cyclic_of_order_four() {
        // 2a = c, 2b = c, 2c = 0 over Z/8
        let rows = vec![
            vec![(0, 2), (2, -1)],
            vec![(1, 2), (2, -1)],
            vec![(2, 2)],
        ];
        let g = cokernel_mod_prime_power(2, 3, 3, &rows).unwrap();
        assert_eq!(g.factors(), &[2, 4]);
    }

    #[test]
    fn no_relations_gives_top_exponent() {
        let g = cokernel_mod_prime_power(3, 2, 2, &[]).unwrap();
        assert_eq!(g.factors(), &[9, 9]);
    }

    proptest! {
        #[test]
        fn agrees_with_integer_snf(
            n in 1usize..5,
            data in proptest::collection::vec(-9i64..10, 0..40),
            p in prop_oneof![Just(2u64), Just(3u64)],
        ) {
            let k = 3u32;
            let pk = p.pow(k) as i64;
            let rows_dense: Vec<Vec<i64>> = data.chunks(n).filter(|c| c.len() == n).map(|c| c.to_vec()).collect();
            let mut with_torsion = rows_dense.clone();
            for i in 0..n {
                let mut r = vec![0; n];
                r[i] = pk;
                with_torsion.push(r);
            }
            let exact = cokernel(&IntMatrix::from_i64(n, &with_torsion)).unwrap();
            let sparse: Vec<Vec<(usize, i64)>> = rows_dense
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect())
                .collect();
            let local = cokernel_mod_prime_power(p, k, n, &sparse).unwrap();
            prop_assert_eq!(local.factors(), exact.factors());
            // every relation projects to zero, generators project to units
            for r in &rows_dense {
                let c: Vec<BigInt> = r.iter().map(|&x| BigInt::from(x)).collect();
                prop_assert!(local.project(&c).iter().all(|x| *x == BigInt::from(0)));
            }
            for (i, g) in local.generators().iter().enumerate() {
                let x = local.project(g);
                for (j, xj) in x.iter().enumerate() {
                    prop_assert_eq!(xj.clone(), BigInt::from((i == j) as i64));
                }
            }
        }
    }
}
