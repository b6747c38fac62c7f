//! The group algebra kG over a prime field.
//!
//! Elements are dense coefficient vectors indexed by group elements.

use std::sync::Arc;

use crate::field::Fp;
use crate::group::FiniteGroup;

pub type GroupAlgebraElement = Vec<u32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebra {
    group: Arc<FiniteGroup>,
    field: Fp,
}

impl GroupAlgebra {
    pub fn new(group: Arc<FiniteGroup>, field: Fp) -> Self {
        GroupAlgebra { group, field }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero(&self) -> GroupAlgebraElement {
        vec![0; self.dim()]
    }

    pub fn basis(&self, g: usize) -> GroupAlgebraElement {
        let mut v = self.zero();
        v[g] = 1 % self.field.p();
        v
    }

    pub fn unit(&self) -> GroupAlgebraElement {
        self.basis(0)
    }

    /// `Σ c·g` from signed integer coefficients.
    pub fn from_terms(&self, terms: &[(i64, usize)]) -> GroupAlgebraElement {
        let mut v = self.zero();
        for &(c, g) in terms {
            v[g] = self.field.add(v[g], self.field.from_i64(c));
        }
        v
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> GroupAlgebraElement {
        a.iter().zip(b).map(|(&x, &y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> GroupAlgebraElement {
        a.iter().zip(b).map(|(&x, &y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: u32, a: &[u32]) -> GroupAlgebraElement {
        a.iter().map(|&x| self.field.mul(c, x)).collect()
    }

    pub fn neg(&self, a: &[u32]) -> GroupAlgebraElement {
        a.iter().map(|&x| self.field.neg(x)).collect()
    }

    /// `acc += c·a`
    pub fn add_scaled(&self, acc: &mut [u32], c: u32, a: &[u32]) {
        if c == 0 {
            return;
        }
        for (x, &y) in acc.iter_mut().zip(a) {
            *x = self.field.mul_add(*x, c, y);
        }
    }

    pub fn mul(&self, a: &[u32], b: &[u32]) -> GroupAlgebraElement {
        let mut out = self.zero();
        for (g, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (h, &y) in b.iter().enumerate() {
                if y != 0 {
                    let gh = self.group.mul(g, h);
                    out[gh] = self.field.mul_add(out[gh], x, y);
                }
            }
        }
        out
    }

    /// Coefficient sum, the augmentation kG → k.
    pub fn augmentation(&self, a: &[u32]) -> u32 {
        a.iter().fold(0, |acc, &x| self.field.add(acc, x))
    }

    /// The symmetric form with `⟨g, h⟩ = 1` iff `g = h⁻¹`.
    pub fn pairing(&self, a: &[u32], b: &[u32]) -> u32 {
        let mut s = 0;
        for (g, &x) in a.iter().enumerate() {
            if x != 0 {
                s = self.field.mul_add(s, x, b[self.group.inv(g)]);
            }
        }
        s
    }

    pub fn is_central(&self, a: &[u32]) -> bool {
        (0..self.dim()).all(|g| {
            let bg = self.basis(g);
            self.mul(&bg, a) == self.mul(a, &bg)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_values() {
        let k = GroupAlgebra::new(Arc::new(FiniteGroup::cyclic(3)), Fp::new(3).unwrap());
        for g in 0..3 {
            for h in 0..3 {
                let expect = u32::from(k.group().mul(g, h) == 0);
                assert_eq!(k.pairing(&k.basis(g), &k.basis(h)), expect);
            }
        }
        let a = k.from_terms(&[(1, 0), (1, 1)]);
        let b = k.from_terms(&[(1, 0), (1, 2)]);
        assert_eq!(k.pairing(&a, &b), 2);
    }

    #[test]
    fn class_sums_are_central() {
        let k = GroupAlgebra::new(Arc::new(FiniteGroup::s3()), Fp::new(3).unwrap());
        let c1 = k.from_terms(&[(1, 0), (1, 1), (1, 2)]);
        let c2 = k.from_terms(&[(1, 3), (1, 4), (1, 5)]);
        assert!(k.is_central(&c1) && k.is_central(&c2));
        assert!(!k.is_central(&k.basis(1)));
        assert_eq!(k.mul(&c1, &c1), k.zero());
        assert_eq!(k.mul(&c1, &c2), k.zero());
    }
}
