use super::field::{FieldDesc, FieldElement};
use crate::error::{Error, Result};

/// A ring monomorphism `F_q -> F_l` determined by the image of `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub src: FieldDesc,
    pub dst: FieldDesc,
    pub image_of_x: FieldElement,
    powers: Vec<FieldElement>,
}

impl Embedding {
    /// The identity map of a field.
    pub fn identity(field: &FieldDesc) -> Embedding {
        let image = field.generator();
        Embedding::from_root(field.clone(), field.clone(), image)
    }

    fn from_root(src: FieldDesc, dst: FieldDesc, image_of_x: FieldElement) -> Embedding {
        let mut powers = Vec::with_capacity(src.n());
        let mut cur = dst.one();
        for _ in 0..src.n() {
            powers.push(cur);
            cur = dst.mul(cur, image_of_x);
        }
        Embedding {
            src,
            dst,
            image_of_x,
            powers,
        }
    }

    pub fn apply(&self, a: FieldElement) -> FieldElement {
        let coords = self.src.coords(a);
        let mut acc = self.dst.zero();
        for (c, &pw) in coords.iter().zip(&self.powers) {
            if *c != 0 {
                acc = self.dst.add(acc, self.dst.scale(pw, *c));
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.image_of_x == self.src.generator()
    }
}

/// Roots of `src.f` in `dst`, in lexicographic coordinate order.
pub fn subfield_roots(src: &FieldDesc, dst: &FieldDesc) -> Result<Vec<FieldElement>> {
    if src.p() != dst.p() || !dst.n().is_multiple_of(src.n()) {
        return Err(Error::NotASubfield {
            src: src.q(),
            dst: dst.q(),
        });
    }
    let f = src.modulus();
    let mut roots = Vec::new();
    for t in 0..dst.q() {
        let a = dst.element_lex(t);
        let mut acc = dst.zero();
        for &c in f.iter().rev() {
            acc = dst.add(dst.mul(acc, a), dst.from_int(c as i64));
        }
        if acc.is_zero() {
            roots.push(a);
            if roots.len() == src.n() {
                break;
            }
        }
    }
    Ok(roots)
}

/// The embedding sending `x` to the first root of `src.f` in `dst`.
pub fn find_embedding(src: &FieldDesc, dst: &FieldDesc) -> Result<Embedding> {
    find_embedding_nth(src, dst, 0)
}

/// The embedding through the `index`-th root (wrapping around when the
/// source field has fewer conjugate roots).
pub fn find_embedding_nth(src: &FieldDesc, dst: &FieldDesc, index: usize) -> Result<Embedding> {
    let roots = subfield_roots(src, dst)?;
    let root = roots[index % roots.len()];
    Ok(Embedding::from_root(src.clone(), dst.clone(), root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::smallfield::make_field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_inclusion() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let e = find_embedding(&f2, &f4).unwrap();
        assert_eq!(e.apply(f2.one()), f4.one());
        assert_eq!(e.apply(f2.zero()), f4.zero());
    }

    #[test]
    fn f4_into_f16_first_root() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let e = find_embedding(&f4, &f16).unwrap();
        // brute force: first lex element r with r^2 + r + 1 = 0
        let first = (0..16)
            .map(|t| f16.element_lex(t))
            .find(|&r| f16.add(f16.add(f16.mul(r, r), r), f16.one()).is_zero())
            .unwrap();
        assert_eq!(e.image_of_x, first);
        let r = e.image_of_x;
        assert!(f16.add(f16.add(f16.mul(r, r), r), f16.one()).is_zero());
    }

    #[test]
    fn not_a_subfield() {
        let f4 = make_field(2, 2).unwrap();
        let f8 = make_field(2, 3).unwrap();
        assert!(matches!(find_embedding(&f4, &f8), Err(Error::NotASubfield { .. })));
        let f9 = make_field(3, 2).unwrap();
        assert!(find_embedding(&f4, &f9).is_err());
    }

    #[test]
    fn embedding_is_a_ring_map() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(p, n, m) in &[(2u64, 2usize, 2usize), (3, 1, 2), (2, 2, 3), (3, 2, 2)] {
            let src = make_field(p, n).unwrap();
            let dst = make_field(p, n * m).unwrap();
            for idx in 0..2 {
                let e = find_embedding_nth(&src, &dst, idx).unwrap();
                for _ in 0..100 {
                    let a = FieldElement(rng.gen_range(0..src.q()));
                    let b = FieldElement(rng.gen_range(0..src.q()));
                    assert_eq!(e.apply(src.mul(a, b)), dst.mul(e.apply(a), e.apply(b)));
                    assert_eq!(e.apply(src.add(a, b)), dst.add(e.apply(a), e.apply(b)));
                }
            }
        }
    }

    #[test]
    fn identity_embedding() {
        let f9 = make_field(3, 2).unwrap();
        let id = Embedding::identity(&f9);
        assert!(id.is_identity());
        for a in f9.elements() {
            assert_eq!(id.apply(a), a);
        }
    }
}
