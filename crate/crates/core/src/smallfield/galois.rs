use super::field::{make_field, FieldDesc};
use super::poly::{self, mulmod};
use crate::error::Result;

/// The truncated unramified extension `(Z/p^E)[x]/(f)` together with the
/// matrix of the Frobenius lift on the power basis.
///
/// `frob_matrix[j]` holds the coordinates of `phi(x^j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisRing {
    pub p: u64,
    pub n: usize,
    pub exponent: u32,
    pub modulus: u64,
    pub f_lift: Vec<u64>,
    pub frob_matrix: Vec<Vec<u64>>,
}

pub fn make_galois_ring(p: u64, n: usize, exponent: u32) -> Result<GaloisRing> {
    let field = make_field(p, n)?;
    let exponent = exponent.max(1);
    let modulus = p
        .checked_pow(exponent)
        .filter(|m| *m < (1u64 << 62))
        .ok_or(crate::error::Error::DegreeOutOfRange(n))?;
    let f_lift = field.modulus().to_vec();
    let root = frobenius_root(&field, &f_lift, modulus);
    let mut frob_matrix = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for _ in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        frob_matrix.push(row);
        cur = poly::mulmod_poly(&cur, &root, &f_lift, modulus);
    }
    Ok(GaloisRing {
        p,
        n,
        exponent,
        modulus,
        f_lift,
        frob_matrix,
    })
}

/// Newton iteration `r <- r - f(r)/f'(r)` starting from `x^p mod (p, f)`.
fn frobenius_root(field: &FieldDesc, f: &[u64], modulus: u64) -> Vec<u64> {
    let p = field.p();
    let mut r = poly::powmod_poly(&[0, 1], p, f, p);
    let df: Vec<u64> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| mulmod(c, k as u64, modulus))
        .collect();
    let mut precision = p;
    loop {
        precision = precision.saturating_mul(precision).min(modulus);
        let value = eval(f, &r, f, precision);
        let slope = eval(&df, &r, f, precision);
        let inv = unit_inverse(field, &slope, f, precision);
        let step = poly::mulmod_poly(&value, &inv, f, precision);
        r = sub(&r, &step, precision);
        if precision == modulus {
            break;
        }
    }
    debug_assert!(eval(f, &r, f, modulus).is_empty());
    r
}

fn eval(g: &[u64], r: &[u64], f: &[u64], m: u64) -> Vec<u64> {
    let mut acc: Vec<u64> = Vec::new();
    for &c in g.iter().rev() {
        acc = poly::mulmod_poly(&acc, r, f, m);
        acc.resize(acc.len().max(1), 0);
        acc[0] = (acc[0] + c % m) % m;
        acc = poly::trim(acc);
    }
    acc
}

fn sub(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let out = (0..len)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(0) % m;
            let y = b.get(k).copied().unwrap_or(0) % m;
            (x + m - y) % m
        })
        .collect();
    poly::trim(out)
}

/// Inverse of a unit of the Galois ring, lifted from its residue by Newton's
/// iteration `v <- v (2 - a v)`.
fn unit_inverse(field: &FieldDesc, a: &[u64], f: &[u64], m: u64) -> Vec<u64> {
    let p = field.p();
    let residue: Vec<u64> = a.iter().map(|c| c % p).collect();
    let res_elem = field.from_poly(&residue);
    let inv_elem = field.inv(res_elem).expect("derivative of a separable polynomial is a unit");
    let mut v = poly::trim(field.coords(inv_elem));
    let mut precision = p;
    while precision < m {
        precision = precision.saturating_mul(precision).min(m);
        let av = poly::mulmod_poly(a, &v, f, precision);
        let two_minus = sub(&[2 % precision], &av, precision);
        v = poly::mulmod_poly(&v, &two_minus, f, precision);
    }
    v
}

impl GaloisRing {
    /// Applies the Frobenius lift to a coordinate vector.
    pub fn apply_frobenius(&self, coords: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        for (j, &c) in coords.iter().enumerate() {
            for (k, &a) in self.frob_matrix[j].iter().enumerate() {
                out[k] = (out[k] + mulmod(c, a, self.modulus)) % self.modulus;
            }
        }
        out
    }

    /// Evaluates `f_lift` at a ring element given in coordinates.
    pub fn eval_f_lift(&self, coords: &[u64]) -> Vec<u64> {
        let mut out = eval(&self.f_lift, &poly::trim(coords.to_vec()), &self.f_lift, self.modulus);
        out.resize(self.n, 0);
        out
    }
}
