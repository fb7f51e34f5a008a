//! Subspaces of `F_q^d`: an incremental echelon form over any `F_q`, with
//! a bit-packed fast path for vectors whose entries all lie in `F_p`.

use crate::linalg::{Echelon, FpVec};
use crate::smallfield::{FieldDesc, FieldElement};

pub(crate) struct QEchelon<'a> {
    field: &'a FieldDesc,
    len: usize,
    rows: Vec<Vec<FieldElement>>,
    pivot_row: Vec<Option<usize>>,
}

impl<'a> QEchelon<'a> {
    pub fn new(field: &'a FieldDesc, len: usize) -> Self {
        QEchelon {
            field,
            len,
            rows: Vec::new(),
            pivot_row: vec![None; len],
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [FieldElement]) {
        let f = self.field;
        for c in 0..self.len {
            if v[c].is_zero() {
                continue;
            }
            if let Some(r) = self.pivot_row[c] {
                let coef = v[c];
                for (x, &y) in v.iter_mut().zip(&self.rows[r]).skip(c) {
                    if !y.is_zero() {
                        *x = f.sub(*x, f.mul(coef, y));
                    }
                }
            }
        }
    }

    /// Inserts `v`; returns true when it was independent.
    pub fn insert(&mut self, mut v: Vec<FieldElement>) -> bool {
        self.reduce(&mut v);
        let Some(c) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = self.field.inv(v[c]).expect("nonzero lead");
        for x in v.iter_mut() {
            *x = self.field.mul(*x, inv);
        }
        self.pivot_row[c] = Some(self.rows.len());
        self.rows.push(v);
        true
    }

    /// Reduced row echelon basis ordered by pivot column.
    pub fn into_rref(self) -> Vec<Vec<FieldElement>> {
        let f = self.field;
        let mut order: Vec<(usize, usize)> = self
            .pivot_row
            .iter()
            .enumerate()
            .filter_map(|(c, r)| r.map(|r| (c, r)))
            .collect();
        order.sort();
        let mut rows: Vec<Vec<FieldElement>> = order.iter().map(|&(_, r)| self.rows[r].clone()).collect();
        let pivots: Vec<usize> = order.iter().map(|&(c, _)| c).collect();
        for k in (0..rows.len()).rev() {
            let (head, tail) = rows.split_at_mut(k);
            let src = &tail[0];
            for row in head.iter_mut() {
                let coef = row[pivots[k]];
                if coef.is_zero() {
                    continue;
                }
                for (x, &y) in row.iter_mut().zip(src.iter()) {
                    if !y.is_zero() {
                        *x = f.sub(*x, f.mul(coef, y));
                    }
                }
            }
        }
        rows
    }
}

pub(crate) fn to_fp(p: u8, v: &[FieldElement]) -> FpVec {
    let mut out = FpVec::zeros(p, v.len());
    for (i, x) in v.iter().enumerate() {
        if !x.is_zero() {
            out.set(i, x.0 as u8);
        }
    }
    out
}

pub(crate) fn from_fp(v: &FpVec) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::ZERO; v.len()];
    v.for_each_nonzero(|i, c| out[i] = FieldElement(c as u64));
    out
}

/// Either an `F_q` echelon or a packed `F_p` echelon, chosen once.
pub(crate) enum Span<'a> {
    Prime(Echelon),
    General(QEchelon<'a>),
}

impl<'a> Span<'a> {
    pub fn new(field: &'a FieldDesc, len: usize, prime: Option<u8>) -> Self {
        match prime {
            Some(p) => Span::Prime(Echelon::new(p, len)),
            None => Span::General(QEchelon::new(field, len)),
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            Span::Prime(e) => e.rank(),
            Span::General(e) => e.rank(),
        }
    }

    pub fn insert(&mut self, v: Vec<FieldElement>) -> bool {
        match self {
            Span::Prime(e) => {
                let p = e.p();
                e.insert(to_fp(p, &v))
            }
            Span::General(e) => e.insert(v),
        }
    }

    pub fn into_rref(self) -> Vec<Vec<FieldElement>> {
        match self {
            Span::Prime(e) => e.into_rref().iter().map(from_fp).collect(),
            Span::General(e) => e.into_rref(),
        }
    }
}

/// Coordinates of `v` in a basis with distinct leading entries equal to 1,
/// or `None` if `v` is outside the span.
pub(crate) fn solve_triangular(
    field: &FieldDesc,
    basis: &[Vec<FieldElement>],
    leads: &[usize],
    v: &[FieldElement],
) -> Option<Vec<FieldElement>> {
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by_key(|&k| leads[k]);
    let mut v = v.to_vec();
    let mut coords = vec![FieldElement::ZERO; basis.len()];
    for k in order {
        let c = v[leads[k]];
        if c.is_zero() {
            continue;
        }
        coords[k] = c;
        for (x, &y) in v.iter_mut().zip(&basis[k]) {
            if !y.is_zero() {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
    }
    v.iter().all(|x| x.is_zero()).then_some(coords)
}
