use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> IntMatrix {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged integer matrix");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn from_i64(cols: usize, rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(
            cols,
            rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        )
    }

    pub fn diagonal(entries: &[BigInt]) -> IntMatrix {
        let mut m = IntMatrix::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.data[i][i] = e.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        self.data.clone()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += a * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    pub fn permute_rows(&self, perm: &[usize]) -> IntMatrix {
        IntMatrix::from_rows(self.cols, perm.iter().map(|&i| self.data[i].clone()).collect())
    }

    pub fn permute_cols(&self, perm: &[usize]) -> IntMatrix {
        IntMatrix::from_rows(
            self.cols,
            self.data
                .iter()
                .map(|r| perm.iter().map(|&j| r[j].clone()).collect())
                .collect(),
        )
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.data.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

/// `u · m · v = s` with `s` diagonal, nonnegative, and `s_11 | s_22 | ...`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithForm {
    /// The diagonal of `s` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols)).map(|i| self.s.data[i][i].clone()).collect()
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut u = IntMatrix::identity(r).data;
    let mut v = IntMatrix::identity(c).data;
    let mut v_inv = IntMatrix::identity(c).data;

    for t in 0..r.min(c) {
        let Some((pi, pj)) = smallest_entry(&a, t, (t..r).flat_map(|i| (t..c).map(move |j| (i, j)))) else {
            break;
        };
        move_pivot(&mut a, &mut u, &mut v, &mut v_inv, t, pi, pj);
        loop {
            let mut clean = true;
            for i in t + 1..r {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    row_sub(&mut a, i, t, &q);
                    row_sub(&mut u, i, t, &q);
                    clean &= a[i][t].is_zero();
                }
            }
            for j in t + 1..c {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    col_sub(&mut a, j, t, &q);
                    col_sub(&mut v, j, t, &q);
                    row_sub(&mut v_inv, t, j, &-&q);
                    clean &= a[t][j].is_zero();
                }
            }
            if !clean {
                let cand = (t..r).map(|i| (i, t)).chain((t + 1..c).map(|j| (t, j)));
                let (pi, pj) = smallest_entry(&a, t, cand).expect("pivot entry is nonzero");
                move_pivot(&mut a, &mut u, &mut v, &mut v_inv, t, pi, pj);
                continue;
            }
            let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    row_sub(&mut a, t, i, &one);
                    row_sub(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            for x in a[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
    }
    SmithForm {
        s: IntMatrix { rows: r, cols: c, data: a },
        u: IntMatrix { rows: r, cols: r, data: u },
        v: IntMatrix { rows: c, cols: c, data: v },
        v_inv: IntMatrix { rows: c, cols: c, data: v_inv },
    }
}

fn smallest_entry(a: &[Vec<BigInt>], _t: usize, cells: impl Iterator<Item = (usize, usize)>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in cells {
        let x = &a[i][j];
        if x.is_zero() {
            continue;
        }
        if best.is_none_or(|(bi, bj)| x.magnitude() < a[bi][bj].magnitude()) {
            best = Some((i, j));
            if x.magnitude().is_one() {
                break;
            }
        }
    }
    best
}

fn move_pivot(
    a: &mut [Vec<BigInt>],
    u: &mut [Vec<BigInt>],
    v: &mut [Vec<BigInt>],
    v_inv: &mut [Vec<BigInt>],
    t: usize,
    pi: usize,
    pj: usize,
) {
    if pi != t {
        a.swap(t, pi);
        u.swap(t, pi);
    }
    if pj != t {
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        v_inv.swap(t, pj);
    }
}

/// `row_i -= q · row_t`
fn row_sub(a: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (src, dst) = if i < t {
        let (lo, hi) = a.split_at_mut(t);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = a.split_at_mut(i);
        (&lo[t], &mut hi[0])
    };
    for (d, s) in dst.iter_mut().zip(src.iter()) {
        if !s.is_zero() {
            *d -= q * s;
        }
    }
}

/// `col_j -= q · col_t`
fn col_sub(a: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in a.iter_mut() {
        if !row[t].is_zero() {
            let d = q * &row[t];
            row[j] -= d;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag_i64(m: &IntMatrix) -> Vec<i64> {
        smith_normal_form(m)
            .diagonal()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(diag_i64(&IntMatrix::from_i64(2, &[vec![2, 0], vec![0, 3]])), vec![1, 6]);
        assert_eq!(diag_i64(&IntMatrix::identity(4)), vec![1, 1, 1, 1]);
        // gcd of entries is 2 and |det| = 4
        assert_eq!(diag_i64(&IntMatrix::from_i64(2, &[vec![2, 4], vec![0, 2]])), vec![2, 2]);
        assert_eq!(diag_i64(&IntMatrix::from_i64(3, &[vec![0, 0, 0]])), vec![0]);
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(IntMatrix::from_i64(2, &[vec![2, 4], vec![0, 2]]).determinant(), BigInt::from(4));
        assert_eq!(
            IntMatrix::from_i64(3, &[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).determinant(),
            BigInt::from(-2)
        );
    }

    fn check(m: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(m);
        assert_eq!(f.u.mul(m).mul(&f.v), f.s);
        assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(m.cols()));
        assert!(f.u.determinant().magnitude().is_one());
        assert!(f.v.determinant().magnitude().is_one());
        let d = f.diagonal();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if i != j {
                    assert!(f.s.get(i, j).is_zero());
                }
            }
        }
        for w in d.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        f
    }

    proptest! {
        #[test]
        fn snf_properties(rows in 0usize..5, cols in 0usize..5, seed in proptest::collection::vec(-6i64..7, 25)) {
            let data: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 5 + j]).collect()).collect();
            let m = IntMatrix::from_i64(cols, &data);
            let f = check(&m);
            // permutation invariance
            let rp: Vec<usize> = (0..rows).rev().collect();
            let cp: Vec<usize> = (0..cols).rev().collect();
            prop_assert_eq!(smith_normal_form(&m.permute_rows(&rp).permute_cols(&cp)).diagonal(), f.diagonal());
            if rows == cols {
                let prod: BigInt = f.diagonal().iter().product();
                prop_assert_eq!(prod, m.determinant().abs());
            }
        }
    }
}
