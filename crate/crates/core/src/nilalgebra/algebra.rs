use rand::Rng;

use super::filtration::{compute_filtration, Filtration};
use crate::error::{Error, Result};
use crate::pcgroup::{format_word, GroupElement, PcPresentation};
use crate::smallfield::{Embedding, FieldDesc, FieldElement};

/// Largest supported algebra dimension (structure constants are dense).
pub const MAX_DIM: usize = 256;

/// Coordinates of an algebra element in the algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement(pub Vec<FieldElement>);

impl AlgebraElement {
    pub fn zero(dim: usize) -> AlgebraElement {
        AlgebraElement(vec![FieldElement::ZERO; dim])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.0
    }
}

/// A finite-dimensional nilpotent associative algebra over `F_q`, given by
/// structure constants `b_i b_j = sum_k c_ij^k b_k`.
#[derive(Clone, Debug)]
pub struct NilpotentAlgebra {
    field: FieldDesc,
    dim: usize,
    /// `sc[i * dim + j]`: nonzero `(k, c_ij^k)` in increasing `k`.
    sc: Vec<Vec<(usize, FieldElement)>>,
    labels: Option<Vec<String>>,
    filtration: Filtration,
}

impl NilpotentAlgebra {
    /// Validates associativity on all basis triples and nilpotency.
    pub fn new(
        field: FieldDesc,
        dim: usize,
        sc: Vec<Vec<(usize, FieldElement)>>,
        labels: Option<Vec<String>>,
    ) -> Result<NilpotentAlgebra> {
        if dim > MAX_DIM {
            return Err(Error::GeneratorGuardExceeded(format!(
                "algebra dimension {dim} exceeds {MAX_DIM}"
            )));
        }
        assert_eq!(sc.len(), dim * dim, "structure constant table has the wrong size");
        if let Some(t) = associativity_witness(&field, dim, &sc) {
            return Err(Error::NotAssociative(t));
        }
        NilpotentAlgebra::assemble(field, dim, sc, labels)
    }

    /// Skips the associativity check; for algebras associative by
    /// construction.
    pub(crate) fn assemble(
        field: FieldDesc,
        dim: usize,
        sc: Vec<Vec<(usize, FieldElement)>>,
        labels: Option<Vec<String>>,
    ) -> Result<NilpotentAlgebra> {
        let sc: Vec<Vec<(usize, FieldElement)>> = sc
            .into_iter()
            .map(|mut terms| {
                terms.retain(|(_, c)| !c.is_zero());
                terms.sort_by_key(|&(k, _)| k);
                terms
            })
            .collect();
        let prime = prime_constants(&field, &sc);
        let filtration = compute_filtration(&field, dim, &sc, prime)?;
        Ok(NilpotentAlgebra {
            field,
            dim,
            sc,
            labels,
            filtration,
        })
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Least `t` with `J^t = 0`.
    pub fn nil_index(&self) -> usize {
        self.filtration.levels.len() + 1
    }

    pub fn power_filtration(&self) -> &Filtration {
        &self.filtration
    }

    /// Nonzero structure constants of `b_i b_j`.
    pub fn product_terms(&self, i: usize, j: usize) -> &[(usize, FieldElement)] {
        &self.sc[i * self.dim + j]
    }

    /// True when every structure constant lies in the prime field.
    pub fn defined_over_prime_field(&self) -> bool {
        prime_constants(&self.field, &self.sc).is_some()
    }

    pub(crate) fn prime_fast_path(&self) -> Option<u8> {
        prime_constants(&self.field, &self.sc)
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement::zero(self.dim)
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        let mut v = self.zero();
        v.0[i] = self.field.one();
        v
    }

    pub fn element(&self, coords: Vec<FieldElement>) -> Result<AlgebraElement> {
        if coords.len() != self.dim || !coords.iter().all(|&c| self.field.is_valid(c)) {
            return Err(Error::FieldMismatch("coordinates do not fit the algebra".into()));
        }
        Ok(AlgebraElement(coords))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> AlgebraElement {
        let q = self.field.q();
        AlgebraElement((0..self.dim).map(|_| FieldElement(rng.gen_range(0..q))).collect())
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.add(x, y)).collect())
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().zip(&b.0).map(|(&x, &y)| self.field.sub(x, y)).collect())
    }

    pub fn neg(&self, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().map(|&x| self.field.neg(x)).collect())
    }

    pub fn scale(&self, c: FieldElement, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().map(|&x| self.field.mul(c, x)).collect())
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let f = &self.field;
        let mut out = vec![FieldElement::ZERO; self.dim];
        for (i, &ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, &bj) in b.0.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let coef = f.mul(ai, bj);
                for &(k, c) in &self.sc[i * self.dim + j] {
                    out[k] = f.add(out[k], f.mul(coef, c));
                }
            }
        }
        AlgebraElement(out)
    }

    /// `v` with `(1 + u)(1 + v) = 1`, i.e. `v = sum_{k >= 1} (-u)^k`.
    pub fn unit_inverse(&self, u: &AlgebraElement) -> AlgebraElement {
        let minus_u = self.neg(u);
        let mut term = minus_u.clone();
        let mut acc = self.zero();
        while !term.is_zero() {
            acc = self.add(&acc, &term);
            term = self.mul(&term, &minus_u);
        }
        acc
    }

    /// `(1 + a)(1 + b) - 1`.
    pub fn unit_mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.add(&self.add(a, b), &self.mul(a, b))
    }

    /// `(1 + u)^e - 1`.
    pub fn unit_pow(&self, u: &AlgebraElement, mut e: u64) -> AlgebraElement {
        let mut base = u.clone();
        let mut acc = self.zero();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.unit_mul(&acc, &base);
            }
            base = self.unit_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Group commutator `[1 + a, 1 + b] - 1`.
    pub fn unit_commutator(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let ia = self.unit_inverse(a);
        let ib = self.unit_inverse(b);
        self.unit_mul(&self.unit_mul(&ia, &ib), &self.unit_mul(a, b))
    }

    /// Lie bracket `ab - ba`.
    pub fn lie_bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.sub(&self.mul(a, b), &self.mul(b, a))
    }

    /// Same structure constants viewed over a larger field.
    pub fn extend_scalars(&self, e: &Embedding) -> Result<NilpotentAlgebra> {
        if e.src != self.field {
            return Err(Error::FieldMismatch(format!(
                "embedding source F_{} differs from the algebra field F_{}",
                e.src.q(),
                self.field.q()
            )));
        }
        let sc = self
            .sc
            .iter()
            .map(|terms| terms.iter().map(|&(k, c)| (k, e.apply(c))).collect())
            .collect();
        NilpotentAlgebra::assemble(e.dst.clone(), self.dim, sc, self.labels.clone())
    }

    /// Maps an element through a field embedding (same basis).
    pub fn embed_element(&self, e: &Embedding, a: &AlgebraElement) -> AlgebraElement {
        AlgebraElement(a.0.iter().map(|&c| e.apply(c)).collect())
    }

    pub fn format_element(&self, a: &AlgebraElement) -> String {
        let terms: Vec<String> = a
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let name = match &self.labels {
                    Some(l) => l[i].clone(),
                    None => format!("b{}", i + 1),
                };
                if c == self.field.one() {
                    name
                } else {
                    format!("{}*{}", self.field.format(c), name)
                }
            })
            .collect();
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

fn prime_constants(field: &FieldDesc, sc: &[Vec<(usize, FieldElement)>]) -> Option<u8> {
    let p = u8::try_from(field.p()).ok()?;
    sc.iter()
        .all(|terms| terms.iter().all(|&(_, c)| field.in_prime_field(c)))
        .then_some(p)
}

fn associativity_witness(
    field: &FieldDesc,
    dim: usize,
    sc: &[Vec<(usize, FieldElement)>],
) -> Option<(usize, usize, usize)> {
    let mut left = vec![FieldElement::ZERO; dim];
    let mut right = vec![FieldElement::ZERO; dim];
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                left.fill(FieldElement::ZERO);
                right.fill(FieldElement::ZERO);
                for &(t, c) in &sc[i * dim + j] {
                    for &(s, d) in &sc[t * dim + k] {
                        left[s] = field.add(left[s], field.mul(c, d));
                    }
                }
                for &(t, c) in &sc[j * dim + k] {
                    for &(s, d) in &sc[i * dim + t] {
                        right[s] = field.add(right[s], field.mul(c, d));
                    }
                }
                if left != right {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// The element `sum c_g g` of the augmentation ideal built by
/// [`augmentation_ideal`], or `None` when the coefficients do not sum to 0.
pub fn group_ring_element(
    pres: &PcPresentation,
    alg: &NilpotentAlgebra,
    terms: &[(i64, GroupElement)],
) -> Option<AlgebraElement> {
    if pres.order() != Some(alg.dim() as u64 + 1) {
        return None;
    }
    let f = alg.field();
    let mut coords = vec![f.zero(); alg.dim()];
    let mut aug = f.zero();
    for (c, g) in terms {
        let c = f.from_int(*c);
        aug = f.add(aug, c);
        let idx = pres.index_of(g);
        if idx != 0 {
            coords[idx - 1] = f.add(coords[idx - 1], c);
        }
    }
    aug.is_zero().then_some(AlgebraElement(coords))
}

/// The augmentation ideal of `F_q[pi]` with basis `g - 1` for `g != 1` in
/// element-enumeration order.
pub fn augmentation_ideal(pres: &PcPresentation, field: &FieldDesc) -> Result<NilpotentAlgebra> {
    if field.p() != pres.p() as u64 {
        return Err(Error::FieldMismatch(format!(
            "field characteristic {} differs from the group prime {}",
            field.p(),
            pres.p()
        )));
    }
    let order = match pres.order() {
        Some(o) if o <= MAX_DIM as u64 + 1 => o as usize,
        _ => {
            return Err(Error::OrderGuardExceeded(format!(
                "augmentation ideal of a group of order {}^{} exceeds dimension {MAX_DIM}",
                pres.p(),
                pres.m()
            )))
        }
    };
    let dim = order - 1;
    let elems: Vec<_> = (0..order).map(|i| pres.element_at(i)).collect();
    let minus_one = field.neg(field.one());
    let mut sc = Vec::with_capacity(dim * dim);
    for g in 1..order {
        for h in 1..order {
            // (g-1)(h-1) = (gh-1) - (g-1) - (h-1)
            let gh = pres.index_of(&pres.mul(&elems[g], &elems[h]));
            let mut terms: Vec<(usize, FieldElement)> = Vec::with_capacity(3);
            if gh != 0 {
                terms.push((gh - 1, field.one()));
            }
            for x in [g - 1, h - 1] {
                match terms.iter_mut().find(|(k, _)| *k == x) {
                    Some(t) => t.1 = field.add(t.1, minus_one),
                    None => terms.push((x, minus_one)),
                }
            }
            sc.push(terms);
        }
    }
    let labels = elems[1..].iter().map(|g| format_word(&g.to_word())).collect();
    NilpotentAlgebra::assemble(field.clone(), dim, sc, Some(labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::builtin;
    use crate::smallfield::{find_embedding, make_field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_augmentation_ideals() {
        let f2 = make_field(2, 1).unwrap();
        let a = augmentation_ideal(&builtin("c2").unwrap(), &f2).unwrap();
        assert_eq!(a.dim(), 1);
        assert!(a.mul(&a.basis_element(0), &a.basis_element(0)).is_zero());
        let c4 = augmentation_ideal(&builtin("c4").unwrap(), &f2).unwrap();
        assert_eq!(c4.dim(), 3);
        assert_eq!(c4.nil_index(), 4);
        let jm = augmentation_ideal(&builtin("jm14_f39").unwrap(), &f2).unwrap();
        assert_eq!(jm.dim(), 127);
    }

    #[test]
    fn c4_square_of_generator() {
        // (g-1)^2 = g^2 - 1 in characteristic 2; g is index 2 (exps (1,0)), g^2 = g2 is index 1
        let f2 = make_field(2, 1).unwrap();
        let pres = builtin("c4").unwrap();
        let a = augmentation_ideal(&pres, &f2).unwrap();
        let g = pres.index_of(&pres.generator(0)) - 1;
        let g2 = pres.index_of(&pres.generator(1)) - 1;
        assert_eq!(a.mul(&a.basis_element(g), &a.basis_element(g)), a.basis_element(g2));
    }

    /// Elements of F_q[pi] as coefficient vectors over all group elements.
    fn group_algebra_mul(pres: &PcPresentation, f: &FieldDesc, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let n = x.len();
        let mut out = vec![FieldElement::ZERO; n];
        for g in 0..n {
            for h in 0..n {
                if x[g].is_zero() || y[h].is_zero() {
                    continue;
                }
                let gh = pres.index_of(&pres.mul(&pres.element_at(g), &pres.element_at(h)));
                out[gh] = f.add(out[gh], f.mul(x[g], y[h]));
            }
        }
        out
    }

    fn to_group_algebra(f: &FieldDesc, a: &AlgebraElement) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::ZERO; a.0.len() + 1];
        for (i, &c) in a.0.iter().enumerate() {
            v[i + 1] = f.add(v[i + 1], c);
            v[0] = f.sub(v[0], c);
        }
        v
    }

    #[test]
    fn products_match_group_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (name, q) in [("d8", 2u64), ("q8", 4), ("heis3", 3), ("c4", 2)] {
            let pres = builtin(name).unwrap();
            let f = make_field(pres.p() as u64, q.ilog(pres.p() as u64) as usize).unwrap();
            let a = augmentation_ideal(&pres, &f).unwrap();
            for _ in 0..100 {
                let x = a.random_element(&mut rng);
                let y = a.random_element(&mut rng);
                let direct = group_algebra_mul(&pres, &f, &to_group_algebra(&f, &x), &to_group_algebra(&f, &y));
                assert_eq!(to_group_algebra(&f, &a.mul(&x, &y)), direct, "{name}");
            }
        }
    }

    #[test]
    fn random_associativity_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let f4 = make_field(2, 2).unwrap();
        let a = augmentation_ideal(&builtin("d8").unwrap(), &f4).unwrap();
        for _ in 0..200 {
            let x = a.random_element(&mut rng);
            let y = a.random_element(&mut rng);
            let z = a.random_element(&mut rng);
            assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
            assert!(a.unit_mul(&x, &a.unit_inverse(&x)).is_zero());
            assert!(a.mul(&x, &a.zero()).is_zero());
        }
    }

    #[test]
    fn extension_preserves_nil_index() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let a = augmentation_ideal(&builtin("d8").unwrap(), &f2).unwrap();
        let e = find_embedding(&f2, &f4).unwrap();
        let b = a.extend_scalars(&e).unwrap();
        assert_eq!(b.nil_index(), a.nil_index());
        assert_eq!(b.power_filtration().dims(), a.power_filtration().dims());
        let c2 = augmentation_ideal(&builtin("c2").unwrap(), &f2).unwrap().extend_scalars(&e).unwrap();
        assert_eq!(c2.dim(), 1);
        assert!(c2.mul(&c2.basis_element(0), &c2.basis_element(0)).is_zero());
        let wrong = find_embedding(&f4, &make_field(2, 4).unwrap()).unwrap();
        assert!(matches!(a.extend_scalars(&wrong), Err(Error::FieldMismatch(_))));
    }
}
