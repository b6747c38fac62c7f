//! Normalized cochain complexes of a finite group over GF(p).
//!
//! Three complexes share one storage scheme. A degree-`n` cochain is a dense
//! table over tuples `(g_1, ..., g_n)` of non-identity elements of the
//! relevant group, indexed in mixed radix `Σ (gᵢ − 1)(m − 1)^(n − i)`. The
//! table never has slots for tuples containing the identity; the cochain is
//! zero there, and every formula that manufactures an argument checks for the
//! identity and drops the term.
//!
//! * [`ComplexKind::HochschildKG`]: `Map(Ḡⁿ, kG)` with the bimodule
//!   differential.
//! * [`ComplexKind::GroupTrivial`]: `Map(H̄ⁿ, k)` for a subgroup `H`.
//! * [`ComplexKind::GroupConjugation`]: `Map(Ḡⁿ, kG)` with `G` acting on
//!   `kG` by conjugation.

use std::env;
use std::sync::Arc;

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{self, QuotientBasis, SparseMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexKind {
    HochschildKG,
    GroupTrivial(Arc<Subgroup>),
    GroupConjugation,
}

impl ComplexKind {
    pub fn name(&self) -> &'static str {
        match self {
            ComplexKind::HochschildKG => "hochschild",
            ComplexKind::GroupTrivial(_) => "trivial",
            ComplexKind::GroupConjugation => "conjugation",
        }
    }
}

/// Degree caps for [`Complex::cohomology`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeCaps {
    pub hochschild: usize,
    pub conjugation: usize,
    pub trivial: usize,
}

impl Default for DegreeCaps {
    fn default() -> Self {
        DegreeCaps { hochschild: 4, conjugation: 4, trivial: 8 }
    }
}

impl DegreeCaps {
    /// Defaults, overridden by `BVCOHO_CAP_OVERRIDE`: either one number for
    /// every kind or a list like `hochschild=5,trivial=10`.
    pub fn from_env() -> Result<Self> {
        match env::var("BVCOHO_CAP_OVERRIDE") {
            Ok(s) => Self::parse(&s),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let mut caps = Self::default();
        let bad = || Error::Parse(format!("bad cap override {s:?}"));
        if let Ok(n) = s.trim().parse::<usize>() {
            return Ok(DegreeCaps { hochschild: n, conjugation: n, trivial: n });
        }
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            let v: usize = v.trim().parse().map_err(|_| bad())?;
            match k.trim() {
                "hochschild" => caps.hochschild = v,
                "conjugation" => caps.conjugation = v,
                "trivial" | "centralizer" => caps.trivial = v,
                _ => return Err(bad()),
            }
        }
        Ok(caps)
    }

    pub fn cap(&self, kind: &ComplexKind) -> usize {
        match kind {
            ComplexKind::HochschildKG => self.hochschild,
            ComplexKind::GroupConjugation => self.conjugation,
            ComplexKind::GroupTrivial(_) => self.trivial,
        }
    }
}

/// A cochain complex: ambient group, field and kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    group: Arc<FiniteGroup>,
    field: Fp,
    kind: ComplexKind,
}

/// Number of non-identity tuples of length `n` in a group of order `m`.
pub fn tuple_count(m: usize, n: usize) -> usize {
    (m - 1).pow(n as u32)
}

/// Mixed-radix index of a tuple of non-identity elements.
#[inline]
pub fn encode(tuple: &[usize], m: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * (m - 1) + (g - 1))
}

#[inline]
pub fn decode_into(mut idx: usize, m: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = idx % (m - 1) + 1;
        idx /= m - 1;
    }
}

pub fn decode(idx: usize, n: usize, m: usize) -> Vec<usize> {
    let mut t = vec![0; n];
    decode_into(idx, m, &mut t);
    t
}

/// How an input coefficient vector is moved before it lands in the output.
#[derive(Clone, Copy)]
enum Action {
    Id,
    Left(usize),
    Right(usize),
    Conj(usize),
}

impl Complex {
    pub fn new(group: Arc<FiniteGroup>, field: Fp, kind: ComplexKind) -> Result<Arc<Self>> {
        if let ComplexKind::GroupTrivial(h) = &kind {
            if h.ambient_order() != group.order() {
                return Err(Error::KindMismatch("subgroup of a different group".into()));
            }
        }
        Ok(Arc::new(Complex { group, field, kind }))
    }

    pub fn hochschild(group: Arc<FiniteGroup>, field: Fp) -> Arc<Self> {
        Arc::new(Complex { group, field, kind: ComplexKind::HochschildKG })
    }

    pub fn conjugation(group: Arc<FiniteGroup>, field: Fp) -> Arc<Self> {
        Arc::new(Complex { group, field, kind: ComplexKind::GroupConjugation })
    }

    /// Trivial coefficients on the whole group.
    pub fn trivial(group: Arc<FiniteGroup>, field: Fp) -> Arc<Self> {
        let h = Arc::new(Subgroup::whole(&group));
        Arc::new(Complex { group, field, kind: ComplexKind::GroupTrivial(h) })
    }

    pub fn trivial_on(group: Arc<FiniteGroup>, field: Fp, h: Arc<Subgroup>) -> Result<Arc<Self>> {
        Self::new(group, field, ComplexKind::GroupTrivial(h))
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn kind(&self) -> &ComplexKind {
        &self.kind
    }

    pub fn algebra(&self) -> GroupAlgebra {
        GroupAlgebra::new(self.group.clone(), self.field)
    }

    /// The group the tuples range over (the subgroup for trivial kind).
    pub fn base_group(&self) -> &FiniteGroup {
        match &self.kind {
            ComplexKind::GroupTrivial(h) => h.group(),
            _ => &self.group,
        }
    }

    pub fn base_order(&self) -> usize {
        self.base_group().order()
    }

    /// Scalars per tuple.
    pub fn width(&self) -> usize {
        match self.kind {
            ComplexKind::GroupTrivial(_) => 1,
            _ => self.group.order(),
        }
    }

    pub fn dim(&self, n: usize) -> usize {
        tuple_count(self.base_order(), n) * self.width()
    }

    pub fn zero(self: &Arc<Self>, degree: usize) -> Cochain {
        Cochain { complex: self.clone(), degree, values: vec![0; self.dim(degree)] }
    }

    pub fn cochain(self: &Arc<Self>, degree: usize, values: Vec<u32>) -> Result<Cochain> {
        if values.len() != self.dim(degree) {
            return Err(Error::DimensionMismatch { expected: self.dim(degree), found: values.len() });
        }
        let p = self.field.p();
        Ok(Cochain { complex: self.clone(), degree, values: values.into_iter().map(|v| v % p).collect() })
    }

    /// Cochain from a function of the tuple (base-group indices); the
    /// function returns `width` scalars.
    pub fn from_fn(self: &Arc<Self>, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<u32>) -> Cochain {
        let m = self.base_order();
        let w = self.width();
        let mut c = self.zero(degree);
        let mut t = vec![0; degree];
        for idx in 0..tuple_count(m, degree) {
            decode_into(idx, m, &mut t);
            let v = f(&t);
            debug_assert_eq!(v.len(), w);
            for (slot, x) in c.values[idx * w..(idx + 1) * w].iter_mut().zip(v) {
                *slot = x % self.field.p();
            }
        }
        c
    }

    /// Terms of `(δφ)(t)` for an output tuple `t` of length `n + 1`: input
    /// tuple index, how the value is moved, and the sign exponent.
    fn terms(&self, t: &[usize], mut emit: impl FnMut(usize, Action, usize)) {
        let g = self.base_group();
        let m = g.order();
        let n1 = t.len();
        let n = n1 - 1;
        let (first, last) = match self.kind {
            ComplexKind::HochschildKG => (Action::Left(t[0]), Action::Right(t[n])),
            ComplexKind::GroupConjugation => (Action::Conj(t[0]), Action::Id),
            ComplexKind::GroupTrivial(_) => (Action::Id, Action::Id),
        };
        emit(encode(&t[1..], m), first, 0);
        let mut merged = vec![0; n];
        for i in 0..n {
            let prod = g.mul(t[i], t[i + 1]);
            if prod == 0 {
                continue;
            }
            merged[..i].copy_from_slice(&t[..i]);
            merged[i] = prod;
            merged[i + 1..].copy_from_slice(&t[i + 2..]);
            emit(encode(&merged, m), Action::Id, i + 1);
        }
        emit(encode(&t[..n], m), last, n1);
    }

    fn target(&self, action: Action, h: usize) -> usize {
        let g = &self.group;
        match action {
            Action::Id => h,
            Action::Left(x) => g.mul(x, h),
            Action::Right(x) => g.mul(h, x),
            Action::Conj(x) => g.mul(g.mul(x, h), g.inv(x)),
        }
    }

    /// The differential `Cⁿ → Cⁿ⁺¹` as a sparse matrix (rows index the
    /// target).
    pub fn differential_matrix(&self, n: usize) -> SparseMatrix {
        let m = self.base_order();
        let w = self.width();
        let f = self.field;
        let mut trip = Vec::new();
        let mut t = vec![0; n + 1];
        for out in 0..tuple_count(m, n + 1) {
            decode_into(out, m, &mut t);
            self.terms(&t, |inp, action, sign| {
                let s = f.sign(sign);
                for h in 0..w {
                    trip.push((out * w + self.target(action, h), inp * w + h, s));
                }
            });
        }
        SparseMatrix::from_triplets(f, tuple_count(m, n + 1) * w, tuple_count(m, n) * w, trip)
            .expect("indices in range")
    }

    pub fn differential(self: &Arc<Self>, c: &Cochain) -> Result<Cochain> {
        self.check(c)?;
        let n = c.degree;
        let m = self.base_order();
        let w = self.width();
        let f = self.field;
        let mut out = self.zero(n + 1);
        let mut t = vec![0; n + 1];
        for idx in 0..tuple_count(m, n + 1) {
            decode_into(idx, m, &mut t);
            let slot = &mut out.values[idx * w..(idx + 1) * w];
            self.terms(&t, |inp, action, sign| {
                let src = &c.values[inp * w..(inp + 1) * w];
                for (h, &v) in src.iter().enumerate() {
                    if v != 0 {
                        let j = self.target(action, h);
                        slot[j] = if sign % 2 == 0 { f.add(slot[j], v) } else { f.sub(slot[j], v) };
                    }
                }
            });
        }
        Ok(out)
    }

    fn check(&self, c: &Cochain) -> Result<()> {
        if *c.complex != *self {
            return Err(Error::KindMismatch(format!(
                "cochain of kind {} over {} (p={}) used with kind {} over {} (p={})",
                c.complex.kind.name(),
                c.complex.group.name(),
                c.complex.field.p(),
                self.kind.name(),
                self.group.name(),
                self.field.p()
            )));
        }
        Ok(())
    }

    fn check_cap(&self, n: usize, caps: &DegreeCaps) -> Result<()> {
        let cap = caps.cap(&self.kind);
        if n > cap {
            return Err(Error::DegreeCapExceeded { degree: n, cap });
        }
        Ok(())
    }

    /// `ker δₙ / im δₙ₋₁`.
    pub fn cohomology(&self, n: usize, caps: &DegreeCaps) -> Result<QuotientBasis> {
        self.check_cap(n, caps)?;
        let d = self.differential_matrix(n);
        let image = if n == 0 { SparseMatrix::zero(self.field, self.dim(0), 0) } else { self.differential_matrix(n - 1) };
        linalg::quotient_basis(&d, &image)
    }

    /// `dim Hⁿ` from two ranks, without building representatives.
    pub fn cohomology_dim(&self, n: usize, caps: &DegreeCaps) -> Result<usize> {
        self.check_cap(n, caps)?;
        let r_n = linalg::rank(&self.differential_matrix(n));
        let r_prev = if n == 0 { 0 } else { linalg::rank(&self.differential_matrix(n - 1)) };
        Ok(self.dim(n) - r_n - r_prev)
    }

    /// A preimage under δ when `c` is a coboundary.
    pub fn is_coboundary(self: &Arc<Self>, c: &Cochain) -> Result<Option<Cochain>> {
        self.check(c)?;
        if !self.differential(c)?.is_zero() {
            return Err(Error::NotACocycle);
        }
        if c.degree == 0 {
            return Ok(if c.is_zero() { Some(self.zero(0)) } else { None });
        }
        let d = self.differential_matrix(c.degree - 1);
        Ok(linalg::solve(&d, &c.values)?.map(|x| Cochain { complex: self.clone(), degree: c.degree - 1, values: x }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    complex: Arc<Complex>,
    degree: usize,
    values: Vec<u32>,
}

impl Cochain {
    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }

    pub fn kind(&self) -> &ComplexKind {
        &self.complex.kind
    }

    pub fn field(&self) -> Fp {
        self.complex.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u32> {
        self.values
    }

    pub fn width(&self) -> usize {
        self.complex.width()
    }

    /// Value at a tuple of base-group indices; `None` stands for zero on a
    /// tuple that contains the identity.
    pub fn get(&self, tuple: &[usize]) -> Option<&[u32]> {
        debug_assert_eq!(tuple.len(), self.degree);
        if tuple.contains(&0) {
            return None;
        }
        let w = self.width();
        let idx = encode(tuple, self.complex.base_order());
        Some(&self.values[idx * w..(idx + 1) * w])
    }

    /// Scalar value of a trivial-kind cochain, zero on identity tuples.
    #[inline]
    pub fn scalar(&self, tuple: &[usize]) -> u32 {
        if tuple.contains(&0) {
            return 0;
        }
        self.values[encode(tuple, self.complex.base_order())]
    }

    pub fn value_at_index(&self, idx: usize) -> &[u32] {
        let w = self.width();
        &self.values[idx * w..(idx + 1) * w]
    }

    pub fn set(&mut self, tuple: &[usize], value: &[u32]) {
        assert!(!tuple.contains(&0), "no storage for identity tuples");
        let w = self.width();
        let idx = encode(tuple, self.complex.base_order());
        let p = self.field().p();
        for (s, &v) in self.values[idx * w..(idx + 1) * w].iter_mut().zip(value) {
            *s = v % p;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if self.complex != other.complex {
            return Err(Error::KindMismatch("cochains from different complexes".into()));
        }
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        Ok(())
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let f = self.field();
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(Cochain { complex: self.complex.clone(), degree: self.degree, values })
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let f = self.field();
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f.sub(a, b)).collect();
        Ok(Cochain { complex: self.complex.clone(), degree: self.degree, values })
    }

    pub fn scale(&self, c: u32) -> Cochain {
        let f = self.field();
        Cochain { complex: self.complex.clone(), degree: self.degree, values: self.values.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn neg(&self) -> Cochain {
        let f = self.field();
        Cochain { complex: self.complex.clone(), degree: self.degree, values: self.values.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn differential(&self) -> Cochain {
        self.complex.differential(self).expect("own complex")
    }

    pub fn is_cocycle(&self) -> bool {
        self.differential().is_zero()
    }

    /// Iterates over `(tuple, value)` for every stored slot.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &[u32])> + '_ {
        let m = self.complex.base_order();
        let w = self.width();
        let n = self.degree;
        self.values.chunks(w).enumerate().map(move |(i, v)| (decode(i, n, m), v))
    }
}

/// One term `coeff · leading ⊗ factor_1 ⊗ ... ⊗ factor_n` of a chain in the
/// bar resolution, all group-algebra elements over the base group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorTerm {
    pub coeff: u32,
    pub leading: Vec<u32>,
    pub factors: Vec<Vec<u32>>,
}

/// Evaluates a trivial-kind cochain on a chain of the bar resolution by
/// multilinear expansion. Basis tuples containing the identity contribute
/// zero; the leading factor acts through its coefficient sum.
pub fn evaluate_on_chain(c: &Cochain, chain: &[TensorTerm]) -> Result<u32> {
    if !matches!(c.kind(), ComplexKind::GroupTrivial(_)) {
        return Err(Error::KindMismatch("evaluation needs a trivial-kind cochain".into()));
    }
    let f = c.field();
    let m = c.complex.base_order();
    let mut total = 0;
    for term in chain {
        if term.factors.len() != c.degree {
            return Err(Error::DegreeMismatch { expected: c.degree, found: term.factors.len() });
        }
        if term.leading.len() != m || term.factors.iter().any(|x| x.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: term.leading.len() });
        }
        let lead = term.leading.iter().fold(0, |a, &x| f.add(a, x));
        let scale = f.mul(term.coeff, lead);
        if scale == 0 {
            continue;
        }
        // expand the factors degree by degree over the tuple index
        let mut partial: Vec<(usize, u32)> = vec![(0, 1)];
        for fac in &term.factors {
            let mut next = Vec::with_capacity(partial.len() * (m - 1));
            for &(idx, v) in &partial {
                for (g, &x) in fac.iter().enumerate().skip(1) {
                    if x != 0 {
                        next.push((idx * (m - 1) + (g - 1), f.mul(v, x)));
                    }
                }
            }
            partial = next;
        }
        let s = partial.iter().fold(0, |a, &(idx, v)| f.mul_add(a, v, c.values[idx]));
        total = f.mul_add(total, scale, s);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Fp {
        Fp::new(3).unwrap()
    }

    #[test]
    fn encoding_round_trip() {
        for idx in 0..tuple_count(6, 3) {
            let t = decode(idx, 3, 6);
            assert!(t.iter().all(|&g| (1..6).contains(&g)));
            assert_eq!(encode(&t, 6), idx);
        }
        assert_eq!(encode(&[], 6), 0);
        assert_eq!(tuple_count(6, 0), 1);
    }

    #[test]
    fn central_elements_are_hochschild_cocycles() {
        let s3 = Arc::new(FiniteGroup::s3());
        let cx = Complex::hochschild(s3.clone(), f3());
        let k = cx.algebra();
        let c1 = cx.cochain(0, k.from_terms(&[(1, 0), (1, 1), (1, 2)])).unwrap();
        assert!(c1.differential().is_zero());
        let a = cx.cochain(0, k.basis(1)).unwrap();
        assert!(!a.differential().is_zero());
    }

    #[test]
    fn w1_is_a_cocycle_on_c3() {
        let cx = Complex::trivial(Arc::new(FiniteGroup::cyclic(3)), f3());
        let unit = cx.cochain(0, vec![1]).unwrap();
        assert!(unit.differential().is_zero());
        let w1 = cx.cochain(1, vec![1, 2]).unwrap();
        let d = w1.differential();
        assert!(d.is_zero());
        assert_eq!(cx.is_coboundary(&w1).unwrap(), None);
        assert!(cx.is_coboundary(&cx.zero(2)).unwrap().is_some());
    }

    #[test]
    fn small_differential_by_hand() {
        // δψ(a,a) = ψ(a) − ψ(a²) + ψ(a) for ψ(a)=1, ψ(a²)=0 over GF(5)
        let cx = Complex::trivial(Arc::new(FiniteGroup::cyclic(3)), Fp::new(5).unwrap());
        let psi = cx.cochain(1, vec![1, 0]).unwrap();
        let d = psi.differential();
        assert_eq!(d.scalar(&[1, 1]), 2);
        assert_eq!(d.scalar(&[1, 2]), 1);
        assert_eq!(d.scalar(&[2, 1]), 1);
        assert_eq!(d.scalar(&[2, 2]), 4);
    }

    #[test]
    fn cohomology_of_cyclic_groups() {
        let caps = DegreeCaps::default();
        let c3 = Complex::trivial(Arc::new(FiniteGroup::cyclic(3)), f3());
        for n in 0..=8 {
            assert_eq!(c3.cohomology_dim(n, &caps).unwrap(), 1, "degree {n}");
        }
        assert_eq!(c3.cohomology(2, &caps).unwrap().dim(), 1);
        let c2 = Complex::trivial(Arc::new(FiniteGroup::cyclic(2)), f3());
        assert_eq!(c2.cohomology_dim(0, &caps).unwrap(), 1);
        for n in 1..=6 {
            assert_eq!(c2.cohomology_dim(n, &caps).unwrap(), 0);
        }
        assert_eq!(c3.cohomology(9, &caps).unwrap_err(), Error::DegreeCapExceeded { degree: 9, cap: 8 });
    }

    #[test]
    fn cap_override_parsing() {
        assert_eq!(DegreeCaps::parse("6").unwrap().hochschild, 6);
        let c = DegreeCaps::parse("hochschild=5, trivial=10").unwrap();
        assert_eq!((c.hochschild, c.conjugation, c.trivial), (5, 4, 10));
        assert!(DegreeCaps::parse("foo=1").is_err());
    }

    #[test]
    fn evaluation_on_basis_tensors() {
        let cx = Complex::trivial(Arc::new(FiniteGroup::cyclic(3)), f3());
        let k = cx.algebra();
        let c = cx.cochain(2, vec![0, 1, 2, 1]).unwrap();
        let term = |lead: usize, a: usize, b: usize| TensorTerm { coeff: 1, leading: k.basis(lead), factors: vec![k.basis(a), k.basis(b)] };
        assert_eq!(evaluate_on_chain(&c, &[term(0, 1, 2)]).unwrap(), 1);
        assert_eq!(evaluate_on_chain(&c, &[term(2, 2, 1)]).unwrap(), 2);
        assert_eq!(evaluate_on_chain(&c, &[term(0, 0, 1)]).unwrap(), 0);
        let wrong = TensorTerm { coeff: 1, leading: k.unit(), factors: vec![k.basis(1)] };
        assert!(matches!(evaluate_on_chain(&c, &[wrong]), Err(Error::DegreeMismatch { .. })));
    }
}
