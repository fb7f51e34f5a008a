use super::algebra::{AlgebraElement, NilpotentAlgebra};
use super::space::{solve_triangular, Span};
use crate::error::{Error, Result};
use crate::smallfield::{FieldDesc, FieldElement};

/// The chain `J ⊇ J^2 ⊇ ... ⊇ J^{t-1} ⊋ 0` with an adapted basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    /// Reduced echelon bases of `J^1, ..., J^{t-1}`.
    pub levels: Vec<Vec<AlgebraElement>>,
    /// Basis of `J` ordered by level; the vectors of level `>= k` span `J^k`.
    pub adapted_basis: Vec<AlgebraElement>,
    /// Level (starting at 1) of each adapted basis vector.
    pub level_of: Vec<usize>,
}

impl Filtration {
    pub fn dims(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// Leading position of each adapted basis vector.
    pub fn leads(&self) -> Vec<usize> {
        self.adapted_basis
            .iter()
            .map(|v| v.0.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
            .collect()
    }
}

fn product_into(
    field: &FieldDesc,
    dim: usize,
    sc: &[Vec<(usize, FieldElement)>],
    y: &[FieldElement],
    s: usize,
    out: &mut [FieldElement],
) {
    out.fill(FieldElement::ZERO);
    for (t, &yt) in y.iter().enumerate() {
        if yt.is_zero() {
            continue;
        }
        for &(k, c) in &sc[t * dim + s] {
            out[k] = field.add(out[k], field.mul(yt, c));
        }
    }
}

pub(crate) fn compute_filtration(
    field: &FieldDesc,
    dim: usize,
    sc: &[Vec<(usize, FieldElement)>],
    prime: Option<u8>,
) -> Result<Filtration> {
    let mut levels: Vec<Vec<Vec<FieldElement>>> = Vec::new();
    if dim > 0 {
        let identity: Vec<Vec<FieldElement>> = (0..dim)
            .map(|i| {
                let mut v = vec![FieldElement::ZERO; dim];
                v[i] = field.one();
                v
            })
            .collect();
        levels.push(identity);
    }
    let mut buf = vec![FieldElement::ZERO; dim];
    while let Some(cur) = levels.last() {
        let mut span = Span::new(field, dim, prime);
        'fill: for y in cur {
            for s in 0..dim {
                product_into(field, dim, sc, y, s, &mut buf);
                if buf.iter().any(|x| !x.is_zero()) {
                    span.insert(buf.clone());
                    if span.rank() == cur.len() {
                        break 'fill;
                    }
                }
            }
        }
        if span.rank() == cur.len() {
            return Err(Error::NotNilpotent);
        }
        if span.rank() == 0 {
            break;
        }
        levels.push(span.into_rref());
    }

    let pivot = |v: &Vec<FieldElement>| v.iter().position(|x| !x.is_zero()).expect("nonzero row");
    let mut adapted = Vec::new();
    let mut level_of = Vec::new();
    for k in 0..levels.len() {
        let next: Vec<usize> = levels.get(k + 1).map(|l| l.iter().map(pivot).collect()).unwrap_or_default();
        for row in &levels[k] {
            if !next.contains(&pivot(row)) {
                adapted.push(AlgebraElement(row.clone()));
                level_of.push(k + 1);
            }
        }
    }
    Ok(Filtration {
        levels: levels
            .into_iter()
            .map(|l| l.into_iter().map(AlgebraElement).collect())
            .collect(),
        adapted_basis: adapted,
        level_of,
    })
}

impl NilpotentAlgebra {
    /// Coordinates of `v` in the adapted basis.
    pub fn adapted_coordinates(&self, v: &AlgebraElement) -> Vec<FieldElement> {
        let filt = self.power_filtration();
        let basis: Vec<Vec<FieldElement>> = filt.adapted_basis.iter().map(|b| b.0.clone()).collect();
        solve_triangular(self.field(), &basis, &filt.leads(), &v.0).expect("adapted basis spans the algebra")
    }

    /// The same algebra written in its adapted basis, so that `J^k` is
    /// spanned by a suffix of the coordinates.
    pub fn rebase_adapted(&self) -> Result<NilpotentAlgebra> {
        let d = self.dim();
        let filt = self.power_filtration();
        let basis: Vec<Vec<FieldElement>> = filt.adapted_basis.iter().map(|b| b.0.clone()).collect();
        let leads = filt.leads();
        let mut sc = Vec::with_capacity(d * d);
        for s in 0..d {
            for t in 0..d {
                let prod = self.mul(&filt.adapted_basis[s], &filt.adapted_basis[t]);
                let coords = solve_triangular(self.field(), &basis, &leads, &prod.0)
                    .ok_or_else(|| Error::InternalInconsistency("product outside the algebra".into()))?;
                sc.push(
                    coords
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .collect(),
                );
            }
        }
        NilpotentAlgebra::assemble(self.field().clone(), d, sc, None)
    }

    /// Dimension over `F_q` and a basis of `[J, J]_L = span{ab - ba}`.
    pub fn lie_commutator_space(&self) -> (usize, Vec<AlgebraElement>) {
        let d = self.dim();
        let mut span = Span::new(self.field(), d, self.prime_fast_path());
        let f = self.field();
        for i in 0..d {
            for j in i + 1..d {
                let mut v = vec![FieldElement::ZERO; d];
                for &(k, c) in self.product_terms(i, j) {
                    v[k] = f.add(v[k], c);
                }
                for &(k, c) in self.product_terms(j, i) {
                    v[k] = f.sub(v[k], c);
                }
                if v.iter().any(|x| !x.is_zero()) {
                    span.insert(v);
                }
            }
        }
        let basis: Vec<AlgebraElement> = span.into_rref().into_iter().map(AlgebraElement).collect();
        (basis.len(), basis)
    }

    pub fn lie_commutator_dim(&self) -> usize {
        self.lie_commutator_space().0
    }
}

#[cfg(test)]
mod tests {
    use super::super::augmentation_ideal;
    use crate::pcgroup::builtin;
    use crate::smallfield::make_field;

    #[test]
    fn c4_levels() {
        let f2 = make_field(2, 1).unwrap();
        let a = augmentation_ideal(&builtin("c4").unwrap(), &f2).unwrap();
        let filt = a.power_filtration();
        assert_eq!(filt.dims(), vec![3, 2, 1]);
        assert_eq!(filt.level_of, vec![1, 2, 3]);
    }

    #[test]
    fn adapted_suffixes_span_powers() {
        for (name, p, n) in [("d8", 2u64, 2usize), ("heis3", 3, 1), ("jm14_f39", 2, 1)] {
            let f = make_field(p, n).unwrap();
            let a = augmentation_ideal(&builtin(name).unwrap(), &f).unwrap();
            let filt = a.power_filtration();
            let dims = filt.dims();
            for (k, &dk) in dims.iter().enumerate() {
                assert_eq!(filt.level_of.iter().filter(|&&l| l > k).count(), dk, "{name}");
            }
            let r = a.rebase_adapted().unwrap();
            assert_eq!(r.power_filtration().dims(), dims);
            // in the rebased algebra the adapted basis is the standard basis
            for (i, b) in r.power_filtration().adapted_basis.iter().enumerate() {
                assert_eq!(*b, r.basis_element(i));
            }
        }
    }

    #[test]
    fn lie_commutator_dims() {
        let f2 = make_field(2, 1).unwrap();
        let d8 = augmentation_ideal(&builtin("d8").unwrap(), &f2).unwrap();
        assert_eq!(d8.lie_commutator_dim(), 3);
        let c8 = augmentation_ideal(&builtin("c8").unwrap(), &f2).unwrap();
        assert_eq!(c8.lie_commutator_dim(), 0);
        let jm = augmentation_ideal(&builtin("jm14_f39").unwrap(), &f2).unwrap();
        assert_eq!(jm.lie_commutator_dim(), 102);
    }
}
