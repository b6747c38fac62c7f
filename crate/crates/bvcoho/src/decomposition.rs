//! Cochain-level additive decomposition `HH*(kG) ≅ ⊕ₓ H*(C_G(x), k)`.
//!
//! The Hochschild complex splits as `⊕ₓ ℋₓ` where `φ ∈ ℋₓⁿ` takes values
//! `φ(g_1, ..., g_n) ∈ k[g_1⋯g_n·C_x]`. Two explicit isomorphisms
//! `ℋₓ ≃ C*(C_G(x), k)` are provided:
//!
//! * [`Decomposition::decompose`] / [`Decomposition::recompose`] read the
//!   coefficient of `x` in `φ(h)·(h_1⋯h_n)⁻¹`; this is the canonical one.
//! * [`Decomposition::decompose_first`] / [`Decomposition::recompose_first`]
//!   read the coefficient of `x` in `±h_1⋯h_n·φ(h_n⁻¹, ..., h_1⁻¹)`; kept for
//!   cross-checks.
//!
//! Walks can produce identity elements of the centralizer. A component
//! cochain evaluated on such a tuple is zero (normalized complex), so those
//! terms are dropped.

use std::sync::Arc;

use crate::complexes::{decode_into, tuple_count, Cochain, Complex, ComplexKind};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::group::{ConjugacyData, FiniteGroup, Subgroup};

/// A cochain on the centralizer of a class representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentCochain {
    /// Ambient index of the representative `x`.
    pub rep: usize,
    pub inner: Cochain,
}

impl ComponentCochain {
    pub fn degree(&self) -> usize {
        self.inner.degree()
    }
}

/// Conjugacy data plus the complexes the decomposition moves between.
#[derive(Debug)]
pub struct Decomposition {
    group: Arc<FiniteGroup>,
    field: Fp,
    data: ConjugacyData,
    hochschild: Arc<Complex>,
    conjugation: Arc<Complex>,
    components: Vec<Arc<Complex>>,
    class_pos: Vec<usize>,
}

fn sign_n(n: usize) -> usize {
    n * (n + 1) / 2
}

impl Decomposition {
    pub fn new(group: Arc<FiniteGroup>, field: Fp) -> Self {
        let data = ConjugacyData::new(&group);
        let components = (0..data.reps.len())
            .map(|r| {
                let h = Arc::new(data.centralizer_subgroup(r));
                Complex::trivial_on(group.clone(), field, h).expect("centralizer of the same group")
            })
            .collect();
        let mut class_pos = vec![0; group.order()];
        for (r, cls) in data.classes.iter().enumerate() {
            for &g in cls {
                class_pos[g] = r;
            }
        }
        Decomposition {
            hochschild: Complex::hochschild(group.clone(), field),
            conjugation: Complex::conjugation(group.clone(), field),
            group,
            field,
            data,
            components,
            class_pos,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn data(&self) -> &ConjugacyData {
        &self.data
    }

    pub fn reps(&self) -> &[usize] {
        &self.data.reps
    }

    pub fn hochschild(&self) -> &Arc<Complex> {
        &self.hochschild
    }

    pub fn conjugation(&self) -> &Arc<Complex> {
        &self.conjugation
    }

    /// Trivial-coefficient complex on `C_G(x)`.
    pub fn component_complex(&self, x: usize) -> Result<&Arc<Complex>> {
        Ok(&self.components[self.data.rep_position(x)?])
    }

    pub fn centralizer(&self, x: usize) -> Result<&Subgroup> {
        match self.component_complex(x)?.kind() {
            ComplexKind::GroupTrivial(h) => Ok(h),
            _ => unreachable!("components have trivial kind"),
        }
    }

    /// Position in `reps` of the class containing `g`.
    pub fn class_position(&self, g: usize) -> usize {
        self.class_pos[g]
    }

    pub fn component(&self, x: usize, inner: Cochain) -> Result<ComponentCochain> {
        if inner.complex() != self.component_complex(x)? {
            return Err(Error::KindMismatch(format!("cochain is not on the centralizer of {x}")));
        }
        Ok(ComponentCochain { rep: x, inner })
    }

    pub fn component_zero(&self, x: usize, degree: usize) -> Result<ComponentCochain> {
        Ok(ComponentCochain { rep: x, inner: self.component_complex(x)?.zero(degree) })
    }

    fn check_hochschild(&self, phi: &Cochain) -> Result<()> {
        if phi.complex() != &self.hochschild {
            return Err(Error::KindMismatch("expected a Hochschild cochain of this group".into()));
        }
        Ok(())
    }

    /// Keeps the part of `φ(g)` supported on `g_1⋯g_n·C_x`.
    pub fn component_project(&self, phi: &Cochain, x: usize) -> Result<Cochain> {
        self.check_hochschild(phi)?;
        let r = self.data.rep_position(x)?;
        let g = &self.group;
        let m = g.order();
        let n = phi.degree();
        let mut out = self.hochschild.zero(n);
        let mut vals = out.clone().into_values();
        let mut t = vec![0; n];
        for idx in 0..tuple_count(m, n) {
            decode_into(idx, m, &mut t);
            let pinv = g.inv(g.product(&t));
            let src = phi.value_at_index(idx);
            for (h, &v) in src.iter().enumerate() {
                if v != 0 && self.class_pos[g.mul(pinv, h)] == r {
                    vals[idx * m + h] = v;
                }
            }
        }
        out = self.hochschild.cochain(n, vals)?;
        Ok(out)
    }

    /// `φ̂ₓ(h) = ` coefficient of `x` in `φ(h_1, ..., h_n)·h_n⁻¹⋯h_1⁻¹`.
    pub fn decompose(&self, phi: &Cochain, x: usize) -> Result<ComponentCochain> {
        if &self.component_project(phi, x)? != phi {
            return Err(Error::NotInComponent(x));
        }
        Ok(self.decompose_unchecked(phi, x))
    }

    /// Like [`decompose`](Self::decompose) without the membership check;
    /// only the `x`-component of `φ` contributes.
    pub fn decompose_unchecked(&self, phi: &Cochain, x: usize) -> ComponentCochain {
        let cx = self.component_complex(x).expect("checked by caller").clone();
        let h = self.centralizer(x).expect("rep").clone();
        let g = &self.group;
        let n = phi.degree();
        let mut amb = vec![0; n];
        let inner = cx.from_fn(n, |t| {
            for (a, &l) in amb.iter_mut().zip(t) {
                *a = h.to_ambient(l);
            }
            let q = g.product(&amb);
            let v = phi.get(&amb).expect("non-identity tuple");
            vec![v[g.mul(x, q)]]
        });
        ComponentCochain { rep: x, inner }
    }

    /// `φ(g) = Σᵢ ψ(h_{i,1}, ..., h_{i,n})·xᵢ·g_1⋯g_n` with the `h`'s from the
    /// walk starting at `γ_i`.
    pub fn recompose(&self, psi: &ComponentCochain) -> Result<Cochain> {
        let x = psi.rep;
        let r = self.data.rep_position(x)?;
        let h = self.centralizer(x)?;
        if psi.inner.complex() != &self.components[r] {
            return Err(Error::KindMismatch("component cochain on the wrong centralizer".into()));
        }
        let g = &self.group;
        let n = psi.degree();
        let nx = self.data.class_size(r);
        let mut walk = vec![0; n];
        let mut local = vec![0; n];
        Ok(self.hochschild.from_fn(n, |t| {
            let mut v = vec![0; g.order()];
            let p = g.product(t);
            for i in 0..nx {
                self.data.walk_into(r, i, t, &mut walk);
                if !to_local(h, &walk, &mut local) {
                    continue;
                }
                let c = psi.inner.scalar(&local);
                let target = g.mul(self.data.classes[r][i], p);
                v[target] = self.field.add(v[target], c);
            }
            v
        }))
    }

    /// First realization: coefficient of `x` in
    /// `(−1)^{n(n+1)/2} h_1⋯h_n·φ(h_n⁻¹, ..., h_1⁻¹)`.
    pub fn decompose_first(&self, phi: &Cochain, x: usize) -> Result<ComponentCochain> {
        self.check_hochschild(phi)?;
        let cx = self.component_complex(x)?.clone();
        let h = self.centralizer(x)?;
        let g = &self.group;
        let f = self.field;
        let n = phi.degree();
        let s = f.sign(sign_n(n));
        let mut rev = vec![0; n];
        let inner = cx.from_fn(n, |t| {
            for (k, &l) in t.iter().enumerate() {
                rev[n - 1 - k] = g.inv(h.to_ambient(l));
            }
            let hh = g.inv(g.product(&rev));
            let v = phi.get(&rev).expect("non-identity tuple");
            vec![f.mul(s, v[g.mul(g.inv(hh), x)])]
        });
        Ok(ComponentCochain { rep: x, inner })
    }

    /// Inverse of [`decompose_first`](Self::decompose_first): walks run over
    /// the reversed inverted arguments `(g_n⁻¹, ..., g_1⁻¹)`.
    pub fn recompose_first(&self, psi: &ComponentCochain) -> Result<Cochain> {
        let x = psi.rep;
        let r = self.data.rep_position(x)?;
        let h = self.centralizer(x)?;
        let g = &self.group;
        let f = self.field;
        let n = psi.degree();
        let s = f.sign(sign_n(n));
        let nx = self.data.class_size(r);
        let mut rev = vec![0; n];
        let mut walk = vec![0; n];
        let mut local = vec![0; n];
        Ok(self.hochschild.from_fn(n, |t| {
            let mut v = vec![0; g.order()];
            for (k, &gk) in t.iter().enumerate() {
                rev[n - 1 - k] = g.inv(gk);
            }
            let p = g.product(t);
            for i in 0..nx {
                self.data.walk_into(r, i, &rev, &mut walk);
                if !to_local(h, &walk, &mut local) {
                    continue;
                }
                let c = f.mul(s, psi.inner.scalar(&local));
                let target = g.mul(p, self.data.classes[r][i]);
                v[target] = f.add(v[target], c);
            }
            v
        }))
    }

    /// `ψ ↦ (g ↦ ψ(g)·g_1⋯g_n)`, landing in `ℋ₁`.
    pub fn embed_group_cochain(&self, psi: &Cochain) -> Result<Cochain> {
        let trivial = &self.components[0];
        if psi.complex() != trivial {
            return Err(Error::KindMismatch("expected a trivial-kind cochain on the whole group".into()));
        }
        let g = &self.group;
        Ok(self.hochschild.from_fn(psi.degree(), |t| {
            let mut v = vec![0; g.order()];
            v[g.product(t)] = psi.scalar(t);
            v
        }))
    }

    /// Chain isomorphism from the Hochschild complex to the conjugation
    /// complex: `φ ↦ (g ↦ φ(g)·(g_1⋯g_n)⁻¹)`.
    pub fn to_conjugation(&self, phi: &Cochain) -> Result<Cochain> {
        self.check_hochschild(phi)?;
        let g = &self.group;
        Ok(self.conjugation.from_fn(phi.degree(), |t| {
            let q = g.inv(g.product(t));
            let src = phi.get(t).expect("non-identity tuple");
            let mut v = vec![0; g.order()];
            for (y, &c) in src.iter().enumerate() {
                v[g.mul(y, q)] = c;
            }
            v
        }))
    }

    pub fn from_conjugation(&self, chi: &Cochain) -> Result<Cochain> {
        if chi.complex() != &self.conjugation {
            return Err(Error::KindMismatch("expected a conjugation-kind cochain".into()));
        }
        let g = &self.group;
        Ok(self.hochschild.from_fn(chi.degree(), |t| {
            let q = g.product(t);
            let src = chi.get(t).expect("non-identity tuple");
            let mut v = vec![0; g.order()];
            for (y, &c) in src.iter().enumerate() {
                v[g.mul(y, q)] = c;
            }
            v
        }))
    }

    /// The automorphism `χ ↦ (g ↦ (−1)^{n(n+1)/2}·g_1⋯g_n·χ(g_n⁻¹, ..., g_1⁻¹)·g_n⁻¹⋯g_1⁻¹)`
    /// of the conjugation complex.
    pub fn reversal_automorphism(&self, chi: &Cochain) -> Result<Cochain> {
        if chi.complex() != &self.conjugation {
            return Err(Error::KindMismatch("expected a conjugation-kind cochain".into()));
        }
        let g = &self.group;
        let f = self.field;
        let n = chi.degree();
        let s = f.sign(sign_n(n));
        let mut rev = vec![0; n];
        Ok(self.conjugation.from_fn(n, |t| {
            for (k, &gk) in t.iter().enumerate() {
                rev[n - 1 - k] = g.inv(gk);
            }
            let p = g.product(t);
            let src = chi.get(&rev).expect("non-identity tuple");
            let mut v = vec![0; g.order()];
            for (y, &c) in src.iter().enumerate() {
                v[g.conjugate(y, g.inv(p))] = f.mul(s, c);
            }
            v
        }))
    }

    /// The reversal automorphism transported to the Hochschild complex
    /// through [`to_conjugation`](Self::to_conjugation); it carries the first
    /// realization onto the second one.
    pub fn realization_bridge(&self, phi: &Cochain) -> Result<Cochain> {
        self.from_conjugation(&self.reversal_automorphism(&self.to_conjugation(phi)?)?)
    }
}

/// Converts ambient walk elements to local indices; `false` if one is the
/// identity.
fn to_local(h: &Subgroup, walk: &[usize], out: &mut [usize]) -> bool {
    for (o, &w) in out.iter_mut().zip(walk) {
        if w == 0 {
            return false;
        }
        *o = h.to_local(w).expect("walk stays in the centralizer");
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> Decomposition {
        Decomposition::new(Arc::new(FiniteGroup::s3()), Fp::new(3).unwrap())
    }

    #[test]
    fn class_sum_projection() {
        let d = s3();
        let k = d.hochschild().algebra();
        let c1 = d.hochschild().cochain(0, k.from_terms(&[(1, 0), (1, 1), (1, 2)])).unwrap();
        assert_eq!(d.component_project(&c1, 0).unwrap().values(), k.unit().as_slice());
        assert_eq!(d.component_project(&c1, 1).unwrap().values(), k.from_terms(&[(1, 1), (1, 2)]).as_slice());
        assert!(d.component_project(&c1, 3).unwrap().is_zero());
        assert_eq!(d.decompose_unchecked(&c1, 1).inner.values(), &[1]);
        assert_eq!(d.decompose_unchecked(&c1, 0).inner.values(), &[1]);
        assert_eq!(d.decompose(&c1, 1), Err(Error::NotInComponent(1)));
        let pa = d.component_project(&c1, 1).unwrap();
        assert_eq!(d.decompose(&pa, 1).unwrap().inner.values(), &[1]);
    }

    #[test]
    fn recompose_w1_at_a() {
        let d = s3();
        let a = 1;
        let psi = d.component(a, d.component_complex(a).unwrap().cochain(1, vec![1, 2]).unwrap()).unwrap();
        let phi = d.recompose(&psi).unwrap();
        let k = d.hochschild().algebra();
        // φ(a) = a·a + 2·a²·a = a² + 2
        assert_eq!(phi.get(&[1]).unwrap(), k.from_terms(&[(1, 2), (2, 0)]).as_slice());
        assert_eq!(phi.get(&[3]).unwrap(), k.zero().as_slice());
        assert_eq!(d.decompose(&phi, a).unwrap(), psi);
    }

    #[test]
    fn degree_zero_recompose_is_class_sum() {
        let d = s3();
        let b = 3;
        let psi = d.component(b, d.component_complex(b).unwrap().cochain(0, vec![2]).unwrap()).unwrap();
        let phi = d.recompose(&psi).unwrap();
        assert_eq!(phi.values(), d.hochschild().algebra().from_terms(&[(2, 3), (2, 4), (2, 5)]).as_slice());
    }

    #[test]
    fn embedding_formula() {
        let d = s3();
        let triv = d.component_complex(0).unwrap().clone();
        let ones = triv.from_fn(1, |_| vec![1]);
        let phi = d.embed_group_cochain(&ones).unwrap();
        let k = d.hochschild().algebra();
        for g in 1..6 {
            assert_eq!(phi.get(&[g]).unwrap(), k.basis(g).as_slice());
        }
        assert_eq!(d.decompose(&phi, 0).unwrap().inner, ones);
    }

    #[test]
    fn first_realization_degree_zero_agrees() {
        let d = s3();
        let k = d.hochschild().algebra();
        let c2 = d.hochschild().cochain(0, k.from_terms(&[(1, 3), (1, 4), (1, 5)])).unwrap();
        assert_eq!(d.decompose_first(&c2, 3).unwrap(), d.decompose(&c2, 3).unwrap());
    }
}
