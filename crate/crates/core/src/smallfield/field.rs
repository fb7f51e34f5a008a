use std::fmt;
use std::sync::Arc;

use super::poly;
use crate::error::{Error, Result};

/// Largest extension degree accepted by [`make_field`].
pub const MAX_DEGREE: usize = 16;

/// Fields up to this size get log/antilog multiplication tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// An element of `F_{p^n}`, stored as the integer `sum c_i p^i` of its
/// power-basis coordinates `c_0, ..., c_{n-1}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct FieldElement(pub u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// The field `F_p[x]/(f)` with `f` the lexicographically smallest monic
/// irreducible polynomial of degree `n`.
#[derive(Clone)]
pub struct FieldDesc {
    p: u64,
    n: usize,
    q: u64,
    f: Vec<u64>,
    tables: Option<Arc<Tables>>,
}

impl PartialEq for FieldDesc {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.n == other.n && self.f == other.f
    }
}

impl Eq for FieldDesc {}

impl fmt::Debug for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{} (modulus {:?})", self.q, self.f)
    }
}

/// Builds `F_{p^n}`.
pub fn make_field(p: u64, n: usize) -> Result<FieldDesc> {
    if !poly::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange(n));
    }
    let q = p
        .checked_pow(n as u32)
        .filter(|q| *q < (1u64 << 62))
        .ok_or(Error::DegreeOutOfRange(n))?;
    let f = if n == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, n, q)
    };
    let mut desc = FieldDesc {
        p,
        n,
        q,
        f,
        tables: None,
    };
    if q <= TABLE_LIMIT {
        desc.tables = Some(Arc::new(desc.build_tables()));
    }
    Ok(desc)
}

fn smallest_irreducible(p: u64, n: usize, q: u64) -> Vec<u64> {
    // Low-degree coefficients are most significant in the ordering.
    let block = q / p;
    for t in block..q {
        let mut coeffs = vec![0u64; n + 1];
        let mut rest = t;
        for k in (0..n).rev() {
            coeffs[k] = rest % p;
            rest /= p;
        }
        coeffs[n] = 1;
        if poly::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

impl FieldDesc {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Defining polynomial, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u64] {
        &self.f
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// The class of `x`; for prime fields this is 0 because `f = x`.
    pub fn generator(&self) -> FieldElement {
        self.from_poly(&[0, 1])
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u64)
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u64> {
        let mut out = vec![0u64; self.n];
        let mut rest = a.0;
        for c in out.iter_mut() {
            *c = rest % self.p;
            rest /= self.p;
        }
        out
    }

    /// Coordinate `k` of `a` in the power basis.
    pub fn coord(&self, a: FieldElement, k: usize) -> u64 {
        (a.0 / self.p.pow(k as u32)) % self.p
    }

    pub fn from_coords(&self, coords: &[u64]) -> Result<FieldElement> {
        if coords.len() > self.n {
            return Err(Error::FieldMismatch(format!(
                "{} coordinates for a degree-{} field",
                coords.len(),
                self.n
            )));
        }
        let mut v = 0u64;
        for &c in coords.iter().rev() {
            if c >= self.p {
                return Err(Error::FieldMismatch(format!("coordinate {c} not reduced mod {}", self.p)));
            }
            v = v * self.p + c;
        }
        Ok(FieldElement(v))
    }

    /// Reduces an arbitrary polynomial over `F_p` into the field.
    pub fn from_poly(&self, coeffs: &[u64]) -> FieldElement {
        let reduced: Vec<u64> = coeffs.iter().map(|c| c % self.p).collect();
        let r = poly::rem_monic(&reduced, &self.f, self.p);
        let mut v = 0u64;
        for &c in r.iter().rev() {
            v = v * self.p + c;
        }
        FieldElement(v)
    }

    /// True when `a` lies in the prime subfield `F_p`.
    pub fn in_prime_field(&self, a: FieldElement) -> bool {
        a.0 < self.p
    }

    pub fn is_valid(&self, a: FieldElement) -> bool {
        a.0 < self.q
    }

    /// All elements in encoding order (`c_{n-1}` most significant).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    /// The `t`-th element when elements are listed lexicographically by
    /// coordinate vector, `c_0` compared first.
    pub fn element_lex(&self, t: u64) -> FieldElement {
        let mut coords = vec![0u64; self.n];
        let mut rest = t;
        for k in (0..self.n).rev() {
            coords[k] = rest % self.p;
            rest /= self.p;
        }
        self.from_coords(&coords).expect("digits are reduced")
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.n == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y, mut out, mut scale) = (a.0, b.0, 0u64, 1u64);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * scale;
            x /= self.p;
            y /= self.p;
            scale *= self.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut scale) = (a.0, 0u64, 1u64);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * scale;
            x /= self.p;
            scale *= self.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &self.tables {
            let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            return FieldElement(t.exp[s] as u64);
        }
        self.mul_slow(a, b)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.n == 1 {
            return FieldElement(poly::mulmod(a.0, b.0, self.p));
        }
        let pa = self.coords(a);
        let pb = self.coords(b);
        self.from_poly(&poly::mulmod_poly(&pa, &pb, &self.f, self.p))
    }

    /// Multiplication by an integer.
    pub fn scale(&self, a: FieldElement, k: u64) -> FieldElement {
        self.mul(a, FieldElement(k % self.p))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.tables {
            let l = t.log[a.0 as usize] as u64;
            let e = (self.q - 1 - l) % (self.q - 1);
            return Ok(FieldElement(t.exp[e as usize] as u64));
        }
        Ok(self.pow(a, self.q - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p)
    }

    pub fn format(&self, a: FieldElement) -> String {
        if self.n == 1 {
            return a.0.to_string();
        }
        let coords = self.coords(a);
        let terms: Vec<String> = coords
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (k, 1) => format!("x^{k}"),
                (k, c) => format!("{c}x^{k}"),
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join("+")
        }
    }

    fn build_tables(&self) -> Tables {
        let q = self.q;
        let order = q - 1;
        let factors = poly::prime_factors(order);
        let primitive = (1..q)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(g, order / r) != FieldElement::ONE)
            })
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * order as usize + 1];
        let mut log = vec![0u32; q as usize];
        let mut cur = FieldElement::ONE;
        for i in 0..order as usize {
            exp[i] = cur.0 as u32;
            log[cur.0 as usize] = i as u32;
            cur = self.mul_slow(cur, primitive);
        }
        for i in order as usize..exp.len() {
            exp[i] = exp[i - order as usize];
        }
        Tables { exp, log }
    }

    fn pow_slow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli_of_small_fields() {
        assert_eq!(make_field(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(make_field(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        // x^4 + x^3 + 1 precedes x^4 + x + 1 when c1 is compared before c3
        assert_eq!(make_field(2, 4).unwrap().modulus(), &[1, 0, 0, 1, 1]);
    }

    #[test]
    fn modulus_is_lexicographically_minimal() {
        // Oracle: enumerate every monic polynomial of the degree in
        // lexicographic order and take the first without a factorisation
        // found by brute-force polynomial division.
        for &(p, n) in &[(2u64, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let f = make_field(p, n).unwrap();
            let q = p.pow(n as u32);
            let mut first = None;
            'outer: for t in 0..q {
                let mut c = vec![0u64; n + 1];
                let mut rest = t;
                for k in (0..n).rev() {
                    c[k] = rest % p;
                    rest /= p;
                }
                c[n] = 1;
                // try every monic divisor of degree 1..=n/2
                for d in 1..=n / 2 {
                    for s in 0..p.pow(d as u32) {
                        let mut g = vec![0u64; d + 1];
                        let mut r = s;
                        for slot in g.iter_mut().take(d) {
                            *slot = r % p;
                            r /= p;
                        }
                        g[d] = 1;
                        if poly::rem_monic(&c, &g, p).is_empty() {
                            continue 'outer;
                        }
                    }
                }
                first = Some(c);
                break;
            }
            assert_eq!(f.modulus(), first.unwrap().as_slice(), "p={p} n={n}");
        }
    }

    #[test]
    fn errors() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(make_field(2, 0).unwrap_err(), Error::DegreeOutOfRange(0));
        assert_eq!(make_field(2, 17).unwrap_err(), Error::DegreeOutOfRange(17));
        let f4 = make_field(2, 2).unwrap();
        assert_eq!(f4.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn f4_arithmetic() {
        let f4 = make_field(2, 2).unwrap();
        let x = f4.generator();
        let x1 = f4.add(x, f4.one());
        assert_eq!(f4.mul(x, x), x1);
        assert_eq!(f4.inv(x).unwrap(), x1);
        assert_eq!(f4.frobenius(x), x1);
        for a in f4.elements() {
            assert_eq!(f4.mul(a, f4.one()), a);
        }
    }

    #[test]
    fn f9_frobenius() {
        let f9 = make_field(3, 2).unwrap();
        let x = f9.generator();
        assert_eq!(f9.frobenius(x), f9.from_coords(&[0, 2]).unwrap());
        assert_eq!(f9.frobenius(f9.one()), f9.one());
    }

    #[test]
    fn table_and_slow_paths_agree() {
        let f = make_field(3, 3).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
            }
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
        }
    }

    #[test]
    fn frobenius_is_multiplicative_and_has_order_n() {
        for &(p, n) in &[(2u64, 4usize), (3, 2), (5, 3)] {
            let f = make_field(p, n).unwrap();
            for a in f.elements().step_by(7) {
                for b in f.elements().step_by(11) {
                    assert_eq!(
                        f.frobenius(f.mul(a, b)),
                        f.mul(f.frobenius(a), f.frobenius(b))
                    );
                }
                let mut c = a;
                for _ in 0..n {
                    c = f.frobenius(c);
                }
                assert_eq!(c, a);
            }
        }
    }

    #[test]
    fn deterministic_construction() {
        assert_eq!(make_field(2, 8).unwrap(), make_field(2, 8).unwrap());
        assert_eq!(make_field(2, 8).unwrap().modulus(), make_field(2, 8).unwrap().modulus());
    }

    #[test]
    fn lex_enumeration_covers_field() {
        let f = make_field(3, 2).unwrap();
        let lex: Vec<_> = (0..9).map(|t| f.coords(f.element_lex(t))).collect();
        assert_eq!(lex[0], vec![0, 0]);
        assert_eq!(lex[1], vec![0, 1]);
        assert_eq!(lex[3], vec![1, 0]);
        let mut sorted = lex.clone();
        sorted.sort();
        assert_eq!(lex, sorted);
    }
}
