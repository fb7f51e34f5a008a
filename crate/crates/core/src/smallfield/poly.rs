//! Dense polynomials over `Z/mZ`, coefficient lists with the constant term first.

pub(crate) fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

pub(crate) fn mul(a: &[u64], b: &[u64], m: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, m)) % m;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a monic `f`.
pub(crate) fn rem_monic(a: &[u64], f: &[u64], m: u64) -> Vec<u64> {
    let n = f.len() - 1;
    let mut r = a.to_vec();
    while r.len() > n {
        let lead = r.pop().unwrap();
        if lead == 0 {
            continue;
        }
        let off = r.len() - n;
        for k in 0..n {
            let sub = mulmod(lead, f[k], m);
            r[off + k] = (r[off + k] + m - sub) % m;
        }
    }
    trim(r)
}

pub(crate) fn mulmod_poly(a: &[u64], b: &[u64], f: &[u64], m: u64) -> Vec<u64> {
    rem_monic(&mul(a, b, m), f, m)
}

pub(crate) fn powmod_poly(a: &[u64], mut e: u64, f: &[u64], m: u64) -> Vec<u64> {
    let mut base = rem_monic(a, f, m);
    let mut acc = vec![1 % m];
    acc = trim(acc);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_poly(&acc, &base, f, m);
        }
        base = mulmod_poly(&base, &base, f, m);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod_prime(a: u64, p: u64) -> u64 {
    let mut e = p - 2;
    let mut base = a % p;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Greatest common divisor over the prime field `F_p`, made monic.
pub(crate) fn gcd_prime(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let lead_inv = inv_mod_prime(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| mulmod(c, lead_inv, p)).collect();
        let r = rem_monic(&a, &monic, p);
        a = monic;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod_prime(lead, p);
        a.iter_mut().for_each(|c| *c = mulmod(*c, li, p));
    }
    a
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Rabin's irreducibility test for a monic `f` of degree `n` over `F_p`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    // x^(p^k) mod f for k = 0..=n
    let mut frob = vec![rem_monic(&x, f, p)];
    for k in 0..n {
        let next = powmod_poly(&frob[k], p, f, p);
        frob.push(next);
    }
    if trim(frob[n].clone()) != rem_monic(&x, f, p) {
        return false;
    }
    for r in prime_factors(n as u64) {
        let k = n / r as usize;
        let mut h = frob[k].clone();
        h.resize(h.len().max(2), 0);
        h[1] = (h[1] + p - 1) % p;
        let g = gcd_prime(&h, f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        // x^2 + x + 1 over F_2
        assert!(is_irreducible(&[1, 1, 1], 2));
        // x^2 + 1 = (x + 1)^2 over F_2
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // x^2 + 1 over F_3
        assert!(is_irreducible(&[1, 0, 1], 3));
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }
}
