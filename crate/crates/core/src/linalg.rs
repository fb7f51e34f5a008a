//! Dense vectors and row echelon forms over a prime field `F_p` (`p < 256`).
//!
//! Over `F_2` vectors are packed 64 entries per machine word; other primes
//! store one entry per byte.

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum Store {
    Bits(Vec<u64>),
    Bytes(Vec<u8>),
}

/// A vector in `F_p^len`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FpVec {
    p: u8,
    len: usize,
    store: Store,
}

pub(crate) fn check_prime(p: u64) -> Result<u8> {
    u8::try_from(p).map_err(|_| Error::PrimeTooLarge(p))
}

#[inline]
fn words(len: usize) -> usize {
    len.div_ceil(64)
}

impl FpVec {
    pub fn zeros(p: u8, len: usize) -> FpVec {
        let store = if p == 2 {
            Store::Bits(vec![0; words(len)])
        } else {
            Store::Bytes(vec![0; len])
        };
        FpVec { p, len, store }
    }

    pub fn unit(p: u8, len: usize, i: usize) -> FpVec {
        let mut v = FpVec::zeros(p, len);
        v.set(i, 1);
        v
    }

    pub fn from_entries(p: u8, entries: &[u8]) -> FpVec {
        let mut v = FpVec::zeros(p, entries.len());
        for (i, &e) in entries.iter().enumerate() {
            if e % p != 0 {
                v.set(i, e % p);
            }
        }
        v
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        match &self.store {
            Store::Bits(w) => ((w[i >> 6] >> (i & 63)) & 1) as u8,
            Store::Bytes(b) => b[i],
        }
    }

    #[inline]
    pub fn set(&mut self, i: usize, v: u8) {
        match &mut self.store {
            Store::Bits(w) => {
                let mask = 1u64 << (i & 63);
                if v & 1 == 1 {
                    w[i >> 6] |= mask;
                } else {
                    w[i >> 6] &= !mask;
                }
            }
            Store::Bytes(b) => b[i] = v,
        }
    }

    /// Adds `c` to entry `i`.
    #[inline]
    pub fn add_at(&mut self, i: usize, c: u8) {
        match &mut self.store {
            Store::Bits(w) => w[i >> 6] ^= ((c & 1) as u64) << (i & 63),
            Store::Bytes(b) => b[i] = ((b[i] as u16 + c as u16) % self.p as u16) as u8,
        }
    }

    pub fn entries(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.store {
            Store::Bits(w) => w.iter().all(|&x| x == 0),
            Store::Bytes(b) => b.iter().all(|&x| x == 0),
        }
    }

    /// First index `>= from` holding a nonzero entry.
    pub fn first_nonzero_from(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        match &self.store {
            Store::Bits(w) => {
                let mut wi = from >> 6;
                let mut word = w[wi] & (!0u64 << (from & 63));
                loop {
                    if word != 0 {
                        let i = (wi << 6) + word.trailing_zeros() as usize;
                        return (i < self.len).then_some(i);
                    }
                    wi += 1;
                    if wi >= w.len() {
                        return None;
                    }
                    word = w[wi];
                }
            }
            Store::Bytes(b) => b[from..].iter().position(|&x| x != 0).map(|k| k + from),
        }
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.first_nonzero_from(0)
    }

    /// Indices and values of nonzero entries, ascending.
    pub fn nonzeros(&self) -> Vec<(usize, u8)> {
        let mut out = Vec::new();
        self.for_each_nonzero(|i, c| out.push((i, c)));
        out
    }

    #[inline]
    pub fn for_each_nonzero(&self, mut f: impl FnMut(usize, u8)) {
        match &self.store {
            Store::Bits(w) => {
                for (wi, &word) in w.iter().enumerate() {
                    let mut m = word;
                    while m != 0 {
                        let t = m.trailing_zeros() as usize;
                        f((wi << 6) + t, 1);
                        m &= m - 1;
                    }
                }
            }
            Store::Bytes(b) => {
                for (i, &x) in b.iter().enumerate() {
                    if x != 0 {
                        f(i, x);
                    }
                }
            }
        }
    }

    pub fn count_nonzero(&self) -> usize {
        match &self.store {
            Store::Bits(w) => w.iter().map(|x| x.count_ones() as usize).sum(),
            Store::Bytes(b) => b.iter().filter(|&&x| x != 0).count(),
        }
    }

    /// `self += c * other`.
    #[inline]
    pub fn add_scaled(&mut self, other: &FpVec, c: u8) {
        debug_assert_eq!(self.len, other.len);
        if c == 0 {
            return;
        }
        match (&mut self.store, &other.store) {
            (Store::Bits(a), Store::Bits(b)) => {
                for (x, y) in a.iter_mut().zip(b) {
                    *x ^= *y;
                }
            }
            (Store::Bytes(a), Store::Bytes(b)) => {
                let p = self.p as u16;
                let c = c as u16;
                for (x, y) in a.iter_mut().zip(b) {
                    if *y != 0 {
                        *x = ((*x as u16 + c * *y as u16) % p) as u8;
                    }
                }
            }
            _ => unreachable!("mixed characteristic"),
        }
    }

    pub fn add(&mut self, other: &FpVec) {
        self.add_scaled(other, 1);
    }

    pub fn sub(&mut self, other: &FpVec) {
        let c = self.p - 1;
        self.add_scaled(other, c);
    }

    pub fn scale(&mut self, c: u8) {
        if let Store::Bytes(b) = &mut self.store {
            let p = self.p as u16;
            for x in b.iter_mut() {
                *x = ((*x as u16 * c as u16) % p) as u8;
            }
        } else if c.is_multiple_of(2) {
            if let Store::Bits(w) = &mut self.store {
                w.iter_mut().for_each(|x| *x = 0);
            }
        }
    }

    pub fn negated(&self) -> FpVec {
        let mut v = self.clone();
        v.scale(self.p - 1);
        v
    }

    pub fn dot(&self, other: &FpVec) -> u8 {
        match (&self.store, &other.store) {
            (Store::Bits(a), Store::Bits(b)) => {
                let ones: u32 = a.iter().zip(b).map(|(x, y)| (x & y).count_ones()).sum();
                (ones & 1) as u8
            }
            (Store::Bytes(a), Store::Bytes(b)) => {
                let p = self.p as u32;
                let s: u32 = a
                    .iter()
                    .zip(b)
                    .fold(0u32, |acc, (x, y)| (acc + *x as u32 * *y as u32) % p);
                s as u8
            }
            _ => unreachable!("mixed characteristic"),
        }
    }
}

#[inline]
pub(crate) fn inv_mod(a: u8, p: u8) -> u8 {
    let (p16, mut base, mut e, mut acc) = (p as u32, a as u32 % p as u32, p as u32 - 2, 1u32);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p16;
        }
        base = base * base % p16;
        e >>= 1;
    }
    acc as u8
}

/// Incrementally built semi-echelon basis of a subspace of `F_p^len`.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u8,
    len: usize,
    rows: Vec<FpVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(p: u8, len: usize) -> Echelon {
        Echelon {
            p,
            len,
            rows: Vec::new(),
            pivot_row: vec![None; len],
        }
    }

    pub fn p(&self) -> u8 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` in place against the current rows; the result has zero
    /// entries at all pivot columns.
    pub fn reduce(&self, v: &mut FpVec) {
        let mut pos = 0;
        while let Some(c) = v.first_nonzero_from(pos) {
            if let Some(r) = self.pivot_row[c] {
                let coef = self.p - v.get(c);
                v.add_scaled(&self.rows[r], coef);
            }
            pos = c + 1;
        }
    }

    /// Inserts `v`; returns true when the rank grew.
    pub fn insert(&mut self, mut v: FpVec) -> bool {
        self.reduce(&mut v);
        match v.first_nonzero() {
            None => false,
            Some(c) => {
                let lead = v.get(c);
                if lead != 1 {
                    v.scale(inv_mod(lead, self.p));
                }
                self.pivot_row[c] = Some(self.rows.len());
                self.rows.push(v);
                true
            }
        }
    }

    pub fn contains(&self, v: &FpVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.len).filter(|&c| self.pivot_row[c].is_some()).collect()
    }

    /// Reduced row echelon form: rows sorted by pivot, each pivot column
    /// zero outside its own row.
    pub fn into_rref(self) -> Vec<FpVec> {
        let p = self.p;
        let mut order: Vec<(usize, usize)> = self
            .pivot_row
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        order.sort();
        let mut rows: Vec<FpVec> = order.iter().map(|&(_, r)| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&(c, _)| c).collect();
        for k in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(k);
            let pivot_vec = &tail[0];
            let c = pivots[k];
            for row in head.iter_mut() {
                let x = row.get(c);
                if x != 0 {
                    row.add_scaled(pivot_vec, p - x);
                }
            }
        }
        rows
    }
}

/// Rank of a list of vectors.
pub fn rank(p: u8, len: usize, vectors: impl IntoIterator<Item = FpVec>) -> usize {
    let mut e = Echelon::new(p, len);
    for v in vectors {
        e.insert(v);
        if e.rank() == len {
            break;
        }
    }
    e.rank()
}

/// Basis with unit leading entries at pairwise distinct positions; supports
/// solving for coordinates by forward substitution.
#[derive(Clone, Debug)]
pub struct TriangularBasis {
    p: u8,
    by_lead: Vec<Option<usize>>,
    vectors: Vec<FpVec>,
}

impl TriangularBasis {
    pub fn new(vectors: Vec<FpVec>) -> Result<TriangularBasis> {
        let len = vectors.first().map(|v| v.len()).unwrap_or(0);
        let p = vectors.first().map(|v| v.p()).unwrap_or(2);
        let mut by_lead = vec![None; len];
        for (k, v) in vectors.iter().enumerate() {
            let lead = v
                .first_nonzero()
                .ok_or_else(|| Error::InternalInconsistency("zero basis vector".into()))?;
            if v.get(lead) != 1 || by_lead[lead].is_some() {
                return Err(Error::InternalInconsistency(
                    "basis is not unit-triangular".into(),
                ));
            }
            by_lead[lead] = Some(k);
        }
        Ok(TriangularBasis {
            p,
            by_lead,
            vectors,
        })
    }

    pub fn vectors(&self) -> &[FpVec] {
        &self.vectors
    }

    /// Coordinates of `v` with respect to the basis, or `None` when `v` is
    /// outside the span.
    pub fn solve(&self, v: &FpVec) -> Option<Vec<u8>> {
        let mut w = v.clone();
        let mut out = vec![0u8; self.vectors.len()];
        while let Some(c) = w.first_nonzero() {
            let k = self.by_lead[c]?;
            let x = w.get(c);
            out[k] = x;
            w.add_scaled(&self.vectors[k], self.p - x);
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_rank(p: u8, rows: &[Vec<u8>]) -> usize {
        // Gaussian elimination on plain integer vectors.
        let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
        let p = p as u32;
        let cols = m.first().map(|r| r.len()).unwrap_or(0);
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..m.len()).find(|&r| !m[r][c].is_multiple_of(p)) else {
                continue;
            };
            m.swap(rank, piv);
            let inv = (1..p).find(|&i| i * m[rank][c] % p == 1).unwrap();
            for x in m[rank].iter_mut() {
                *x = *x * inv % p;
            }
            for r in 0..m.len() {
                if r != rank && !m[r][c].is_multiple_of(p) {
                    let f = m[r][c];
                    for k in 0..cols {
                        m[r][k] = (m[r][k] + (p - f) * m[rank][k]) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_matches_plain_elimination(
            p in prop::sample::select(vec![2u8, 3, 5]),
            rows in prop::collection::vec(prop::collection::vec(0u8..5, 70), 0..12)
        ) {
            let rows: Vec<Vec<u8>> = rows.into_iter().map(|r| r.into_iter().map(|x| x % p).collect()).collect();
            let vecs = rows.iter().map(|r| FpVec::from_entries(p, r));
            prop_assert_eq!(rank(p, 70, vecs), brute_rank(p, &rows));
        }

        #[test]
        fn rref_rows_span_and_are_reduced(
            rows in prop::collection::vec(prop::collection::vec(0u8..3, 20), 1..8)
        ) {
            let mut e = Echelon::new(3, 20);
            for r in &rows {
                e.insert(FpVec::from_entries(3, r));
            }
            let pivots = e.pivots();
            let rref = e.clone().into_rref();
            for (k, row) in rref.iter().enumerate() {
                prop_assert_eq!(row.first_nonzero(), Some(pivots[k]));
                for (j, &c) in pivots.iter().enumerate() {
                    prop_assert_eq!(row.get(c), u8::from(j == k));
                }
            }
            for r in &rows {
                prop_assert!(e.contains(&FpVec::from_entries(3, r)));
            }
        }
    }

    #[test]
    fn bit_vector_basics() {
        let mut v = FpVec::zeros(2, 130);
        v.set(3, 1);
        v.set(129, 1);
        assert_eq!(v.nonzeros(), vec![(3, 1), (129, 1)]);
        assert_eq!(v.first_nonzero_from(4), Some(129));
        assert_eq!(v.first_nonzero_from(130), None);
        let w = v.clone();
        v.add(&w);
        assert!(v.is_zero());
    }

    #[test]
    fn triangular_solve() {
        let a = FpVec::from_entries(3, &[1, 2, 0]);
        let b = FpVec::from_entries(3, &[0, 1, 1]);
        let c = FpVec::from_entries(3, &[0, 0, 1]);
        let t = TriangularBasis::new(vec![a.clone(), b.clone(), c.clone()]).unwrap();
        let mut target = a.clone();
        target.add_scaled(&b, 2);
        target.add_scaled(&c, 1);
        assert_eq!(t.solve(&target), Some(vec![1, 2, 1]));
    }
}
