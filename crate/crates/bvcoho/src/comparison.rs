//! Projective resolutions of the trivial module, setwise self-homotopies and
//! the comparison maps they produce.
//!
//! A term `P_n = ⊕_m A·e_m` is described by markers `m`, each with an
//! idempotent `e_m` (the unit for free summands). An element is stored as
//! its components `y_m ∈ A·e_m`, so a module map out of `P_n` is determined
//! by the images of the `e_m` and sends `y_m` to `y_m·f(e_m)`.
//!
//! Homotopies are only required to be linear; they are stored as value
//! tables on a linear basis of each term (or given by formula for the bar
//! resolution). Comparison maps are built inductively by
//! `f_n(e_m) = s̃(f_{n−1}(∂e_m))` with `s̃(y) = Σ_e e·s(e·y)` over the
//! idempotent split of the source, and checked to be chain maps before they
//! are returned.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::GroupAlgebra;
use crate::complexes::{encode, tuple_count, Cochain, Complex, ComplexKind};
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::group::FiniteGroup;

/// `Σ_m y_m` with `y_m` a group-algebra vector at marker `m`; sorted by
/// marker, zero components removed.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ModuleElement {
    terms: Vec<(usize, Vec<u32>)>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement::default()
    }

    pub fn single(marker: usize, value: Vec<u32>) -> Self {
        let mut e = ModuleElement::zero();
        if value.iter().any(|&c| c != 0) {
            e.terms.push((marker, value));
        }
        e
    }

    pub fn from_terms(k: &GroupAlgebra, terms: impl IntoIterator<Item = (usize, Vec<u32>)>) -> Self {
        let mut acc: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (m, v) in terms {
            match acc.get_mut(&m) {
                Some(slot) => *slot = k.add(slot, &v),
                None => {
                    acc.insert(m, v);
                }
            }
        }
        ModuleElement { terms: acc.into_iter().filter(|(_, v)| v.iter().any(|&c| c != 0)).collect() }
    }

    pub fn terms(&self) -> &[(usize, Vec<u32>)] {
        &self.terms
    }

    pub fn component(&self, marker: usize) -> Option<&[u32]> {
        self.terms.binary_search_by_key(&marker, |t| t.0).ok().map(|i| self.terms[i].1.as_slice())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, k: &GroupAlgebra, other: &Self) -> Self {
        Self::from_terms(k, self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn sub(&self, k: &GroupAlgebra, other: &Self) -> Self {
        self.add(k, &other.scale(k.field(), k.field().p() - 1))
    }

    pub fn scale(&self, f: Fp, c: u32) -> Self {
        ModuleElement { terms: self.terms.iter().map(|(m, v)| (*m, v.iter().map(|&x| f.mul(x, c)).collect())).collect() }
            .normalized()
    }

    /// `x·self`
    pub fn left_mul(&self, k: &GroupAlgebra, x: &[u32]) -> Self {
        ModuleElement { terms: self.terms.iter().map(|(m, v)| (*m, k.mul(x, v))).collect() }.normalized()
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|(_, v)| v.iter().any(|&c| c != 0));
        self
    }

    /// The augmentation `Σ_m ε(y_m)`.
    pub fn augmentation(&self, k: &GroupAlgebra) -> u32 {
        self.terms.iter().fold(0, |a, (_, v)| k.field().add(a, k.augmentation(v)))
    }

    /// Flattened coordinates over `markers × group`.
    fn flatten(&self, markers: usize, order: usize) -> Vec<u32> {
        let mut out = vec![0; markers * order];
        for (m, v) in &self.terms {
            out[m * order..(m + 1) * order].copy_from_slice(v);
        }
        out
    }
}

/// A projective resolution `P_* → k` of the trivial module over `kH`.
pub trait Resolution {
    fn algebra(&self) -> &GroupAlgebra;
    fn marker_count(&self, n: usize) -> usize;
    fn idempotent(&self, n: usize, m: usize) -> Vec<u32>;
    /// `∂_n(e_m) ∈ P_{n−1}` for `n ≥ 1`.
    fn boundary(&self, n: usize, m: usize) -> ModuleElement;
    /// Orthogonal idempotents summing to 1; every marker idempotent is one
    /// of them or the unit.
    fn idempotent_split(&self) -> Vec<Vec<u32>>;
    /// A linear basis of `P_n` over the field.
    fn linear_basis(&self, n: usize) -> Vec<ModuleElement>;

    /// `∂_n` on an arbitrary element.
    fn apply_boundary(&self, n: usize, y: &ModuleElement) -> ModuleElement {
        let k = self.algebra();
        let mut parts = Vec::new();
        for (m, v) in y.terms() {
            for (t, w) in self.boundary(n, *m).terms() {
                parts.push((*t, k.mul(v, w)));
            }
        }
        ModuleElement::from_terms(k, parts)
    }
}

/// A setwise self-homotopy `s_n: P_n → P_{n+1}`, `s_{−1}: k → P_0`.
pub trait Homotopy {
    /// `s_{−1}(1)`.
    fn unit(&self) -> ModuleElement;
    fn apply(&self, n: usize, y: &ModuleElement) -> Result<ModuleElement>;
}

/// The normalized bar resolution `kH ⊗ k̄H^{⊗n}`; markers are tuple indices
/// in the same encoding as the cochain complexes.
#[derive(Debug, Clone)]
pub struct BarResolution {
    algebra: GroupAlgebra,
}

impl BarResolution {
    pub fn new(group: Arc<FiniteGroup>, field: Fp) -> Self {
        BarResolution { algebra: GroupAlgebra::new(group, field) }
    }

    pub fn order(&self) -> usize {
        self.algebra.dim()
    }

    /// `leading ⊗ x_1 ⊗ ... ⊗ x_n` expanded over group tuples, identity
    /// factors dropped.
    pub fn tensor(&self, leading: &[u32], factors: &[&[u32]]) -> ModuleElement {
        let f = self.algebra.field();
        let m = self.order();
        let mut partial: Vec<(usize, u32)> = vec![(0, 1 % f.p())];
        for fac in factors {
            let mut next = Vec::new();
            for &(idx, c) in &partial {
                for (g, &x) in fac.iter().enumerate().skip(1) {
                    if x != 0 {
                        next.push((idx * (m - 1) + g - 1, f.mul(c, x)));
                    }
                }
            }
            partial = next;
        }
        ModuleElement::from_terms(&self.algebra, partial.into_iter().map(|(idx, c)| (idx, self.algebra.scale(c, leading))))
    }
}

impl Resolution for BarResolution {
    fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    fn marker_count(&self, n: usize) -> usize {
        tuple_count(self.order(), n)
    }

    fn idempotent(&self, _n: usize, _m: usize) -> Vec<u32> {
        self.algebra.unit()
    }

    fn boundary(&self, n: usize, marker: usize) -> ModuleElement {
        assert!(n >= 1, "no boundary out of degree 0");
        let k = &self.algebra;
        let grp = k.group();
        let m = self.order();
        let t = crate::complexes::decode(marker, n, m);
        let f = k.field();
        let mut parts = vec![(encode(&t[1..], m), k.basis(t[0]))];
        let mut merged = vec![0; n - 1];
        for i in 0..n - 1 {
            let prod = grp.mul(t[i], t[i + 1]);
            if prod == 0 {
                continue;
            }
            merged[..i].copy_from_slice(&t[..i]);
            merged[i] = prod;
            merged[i + 1..].copy_from_slice(&t[i + 2..]);
            parts.push((encode(&merged, m), k.scale(f.sign(i + 1), &k.unit())));
        }
        parts.push((encode(&t[..n - 1], m), k.scale(f.sign(n), &k.unit())));
        ModuleElement::from_terms(k, parts)
    }

    fn idempotent_split(&self) -> Vec<Vec<u32>> {
        vec![self.algebra.unit()]
    }

    fn linear_basis(&self, n: usize) -> Vec<ModuleElement> {
        let mut out = Vec::new();
        for marker in 0..self.marker_count(n) {
            for g in 0..self.order() {
                out.push(ModuleElement::single(marker, self.algebra.basis(g)));
            }
        }
        out
    }
}

/// `s_n(g_0⊗g_1⊗...⊗g_n) = 1⊗g_0⊗g_1⊗...⊗g_n`, zero when `g_0 = 1`.
#[derive(Debug, Clone)]
pub struct BarHomotopy {
    algebra: GroupAlgebra,
}

impl BarHomotopy {
    pub fn new(bar: &BarResolution) -> Self {
        BarHomotopy { algebra: bar.algebra.clone() }
    }
}

impl Homotopy for BarHomotopy {
    fn unit(&self) -> ModuleElement {
        ModuleElement::single(0, self.algebra.unit())
    }

    fn apply(&self, n: usize, y: &ModuleElement) -> Result<ModuleElement> {
        let m = self.algebra.dim();
        let stride = tuple_count(m, n);
        let k = &self.algebra;
        let mut parts = Vec::new();
        for (marker, v) in y.terms() {
            for (g, &c) in v.iter().enumerate().skip(1) {
                if c != 0 {
                    parts.push(((g - 1) * stride + marker, k.scale(c, &k.unit())));
                }
            }
        }
        Ok(ModuleElement::from_terms(k, parts))
    }
}

/// Coordinates with respect to a fixed linearly independent family.
#[derive(Debug, Clone)]
struct Coordinates {
    field: Fp,
    basis: Vec<Vec<u32>>,
    /// `(pivot column, row of the transform)`: the reduced row with that
    /// pivot equals `Σ_i transform[i]·basis[i]`.
    pivots: Vec<(usize, Vec<u32>)>,
}

impl Coordinates {
    /// `None` if the family is dependent.
    fn new(field: Fp, basis: Vec<Vec<u32>>) -> Option<Self> {
        let k = basis.len();
        let mut rows: Vec<(Vec<u32>, Vec<u32>)> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let mut t = vec![0; k];
                t[i] = 1 % field.p();
                (b.clone(), t)
            })
            .collect();
        let dim = basis.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..dim {
            let Some(piv) = (r..k).find(|&i| rows[i].0[col] != 0) else { continue };
            rows.swap(r, piv);
            let inv = field.inv(rows[r].0[col]);
            let (v, t) = &mut rows[r];
            v.iter_mut().for_each(|x| *x = field.mul(*x, inv));
            t.iter_mut().for_each(|x| *x = field.mul(*x, inv));
            let (pv, pt) = rows[r].clone();
            for (i, (v, t)) in rows.iter_mut().enumerate() {
                if i != r && v[col] != 0 {
                    let c = field.neg(v[col]);
                    for (a, &b) in v.iter_mut().zip(&pv) {
                        *a = field.mul_add(*a, c, b);
                    }
                    for (a, &b) in t.iter_mut().zip(&pt) {
                        *a = field.mul_add(*a, c, b);
                    }
                }
            }
            pivots.push((col, r));
            r += 1;
        }
        if r < k {
            return None;
        }
        let pivots = pivots.into_iter().map(|(c, i)| (c, rows[i].1.clone())).collect();
        Some(Coordinates { field, basis, pivots })
    }

    /// `None` if `v` is outside the span.
    fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.field;
        let mut c = vec![0; self.basis.len()];
        for (col, t) in &self.pivots {
            let x = v[*col];
            if x != 0 {
                for (a, &b) in c.iter_mut().zip(t) {
                    *a = f.mul_add(*a, x, b);
                }
            }
        }
        let mut back = vec![0; v.len()];
        for (ci, b) in c.iter().zip(&self.basis) {
            if *ci != 0 {
                for (a, &y) in back.iter_mut().zip(b) {
                    *a = f.mul_add(*a, *ci, y);
                }
            }
        }
        (back == v).then_some(c)
    }
}

/// Greedy maximal independent subfamily.
fn independent_subset(field: Fp, vectors: impl IntoIterator<Item = Vec<u32>>) -> Vec<Vec<u32>> {
    let mut chosen: Vec<Vec<u32>> = Vec::new();
    for v in vectors {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let mut trial = chosen.clone();
        trial.push(v);
        if Coordinates::new(field, trial.clone()).is_some() {
            chosen = trial;
        }
    }
    chosen
}

#[derive(Debug, Clone)]
struct Term {
    idempotents: Vec<Vec<u32>>,
    /// Empty in degree 0.
    boundary: Vec<ModuleElement>,
}

/// A resolution given by finitely many tabulated terms, optionally
/// periodic: with period `p`, degree `n > p` repeats degree `(n−1) mod p + 1`.
/// Without a period, terms past the table are zero.
#[derive(Debug, Clone)]
pub struct BasedResolution {
    algebra: GroupAlgebra,
    terms: Vec<Term>,
    period: Option<usize>,
    split: Vec<Vec<u32>>,
}

fn slot(len: usize, period: Option<usize>, n: usize) -> Option<usize> {
    if n < len {
        Some(n)
    } else {
        period.map(|p| (n - 1) % p + 1)
    }
}

impl BasedResolution {
    /// Checks idempotents, periodic shape and `∂∂ = 0`, `ε∂ = 0`.
    fn new(algebra: GroupAlgebra, terms: Vec<Term>, period: Option<usize>, split: Vec<Vec<u32>>) -> Result<Self> {
        if let Some(p) = period {
            if p == 0 || terms.len() != p + 1 {
                return Err(Error::Parse(format!("period {p} needs exactly {} tabulated terms", p + 1)));
            }
        }
        for e in terms.iter().flat_map(|t| &t.idempotents).chain(&split) {
            if algebra.mul(e, e) != *e {
                return Err(Error::Parse("marker idempotent is not idempotent".into()));
            }
        }
        let res = BasedResolution { algebra, terms, period, split };
        let top = res.terms.len() + res.period.unwrap_or(0);
        for n in 1..=top {
            for m in 0..res.marker_count(n) {
                let d = res.boundary(n, m);
                let bad = if n == 1 {
                    d.augmentation(&res.algebra) != 0
                } else {
                    !res.apply_boundary(n - 1, &d).is_zero()
                };
                if bad {
                    return Err(Error::NotChainMap { degree: n, marker: m });
                }
            }
        }
        Ok(res)
    }

    fn term(&self, n: usize) -> Option<&Term> {
        slot(self.terms.len(), self.period, n).map(|i| &self.terms[i])
    }

    pub fn period(&self) -> Option<usize> {
        self.period
    }

    /// `true` when `ε(∂_n e_m)` vanishes componentwise for every marker,
    /// i.e. the dual differential out of `Hom(P_{n−1}, k)` is zero.
    pub fn boundary_in_radical(&self, n: usize) -> bool {
        if n == 0 {
            return true;
        }
        (0..self.marker_count(n)).all(|m| self.boundary(n, m).terms().iter().all(|(_, v)| self.algebra.augmentation(v) == 0))
    }
}

impl Resolution for BasedResolution {
    fn algebra(&self) -> &GroupAlgebra {
        &self.algebra
    }

    fn marker_count(&self, n: usize) -> usize {
        self.term(n).map_or(0, |t| t.idempotents.len())
    }

    fn idempotent(&self, n: usize, m: usize) -> Vec<u32> {
        self.term(n).expect("degree in range").idempotents[m].clone()
    }

    fn boundary(&self, n: usize, m: usize) -> ModuleElement {
        self.term(n).expect("degree in range").boundary[m].clone()
    }

    fn idempotent_split(&self) -> Vec<Vec<u32>> {
        self.split.clone()
    }

    fn linear_basis(&self, n: usize) -> Vec<ModuleElement> {
        let Some(term) = self.term(n) else { return Vec::new() };
        let k = &self.algebra;
        let mut out = Vec::new();
        for (m, e) in term.idempotents.iter().enumerate() {
            let span = independent_subset(k.field(), (0..k.dim()).map(|g| k.mul(&k.basis(g), e)));
            out.extend(span.into_iter().map(|v| ModuleElement::single(m, v)));
        }
        out
    }
}

#[derive(Debug, Clone)]
struct HomotopyTable {
    markers: usize,
    coords: Coordinates,
    images: Vec<ModuleElement>,
}

/// A homotopy stored as value tables on linear bases, with the same
/// periodicity as its resolution.
#[derive(Debug, Clone)]
pub struct SetwiseHomotopy {
    algebra: GroupAlgebra,
    unit: ModuleElement,
    tables: Vec<HomotopyTable>,
    period: Option<usize>,
}

impl SetwiseHomotopy {
    fn new(
        res: &BasedResolution,
        unit: ModuleElement,
        tables: Vec<Vec<(ModuleElement, ModuleElement)>>,
    ) -> Result<Self> {
        let k = res.algebra.clone();
        let order = k.dim();
        let mut out = Vec::new();
        for (n, entries) in tables.into_iter().enumerate() {
            let markers = res.marker_count(n);
            let basis = entries.iter().map(|(b, _)| b.flatten(markers, order)).collect();
            let coords = Coordinates::new(k.field(), basis)
                .ok_or_else(|| Error::Parse(format!("homotopy basis in degree {n} is dependent")))?;
            let images = entries.into_iter().map(|(_, im)| im).collect();
            out.push(HomotopyTable { markers, coords, images });
        }
        Ok(SetwiseHomotopy { algebra: k, unit, tables: out, period: res.period })
    }
}

impl Homotopy for SetwiseHomotopy {
    fn unit(&self) -> ModuleElement {
        self.unit.clone()
    }

    fn apply(&self, n: usize, y: &ModuleElement) -> Result<ModuleElement> {
        if y.is_zero() {
            return Ok(ModuleElement::zero());
        }
        let Some(i) = slot(self.tables.len(), self.period, n) else {
            return Err(Error::DegreeMismatch { expected: self.tables.len().saturating_sub(1), found: n });
        };
        let table = &self.tables[i];
        let c = table
            .coords
            .coords(&y.flatten(table.markers, self.algebra.dim()))
            .ok_or_else(|| Error::Parse(format!("element outside the tabulated basis in degree {n}")))?;
        let mut acc = ModuleElement::zero();
        for (ci, im) in c.iter().zip(&table.images) {
            if *ci != 0 {
                acc = acc.add(&self.algebra, &im.scale(self.algebra.field(), *ci));
            }
        }
        Ok(acc)
    }
}

/// Outcome of [`verify_homotopy`] for one degree (−1 for `ε∘s_{−1}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: isize,
    /// The first basis vector where `s∂ + ∂s ≠ id`.
    pub failure: Option<ModuleElement>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyReport {
    pub degrees: Vec<DegreeCheck>,
}

impl HomotopyReport {
    pub fn passed(&self) -> bool {
        self.degrees.iter().all(|d| d.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&DegreeCheck> {
        self.degrees.iter().find(|d| d.failure.is_some())
    }
}

/// Checks `s_{n−1}∂_n + ∂_{n+1}s_n = id` on every basis vector of `P_n`
/// for `n ≤ max_degree`, and `ε s_{−1} = id`.
pub fn verify_homotopy(res: &dyn Resolution, s: &dyn Homotopy, max_degree: usize) -> HomotopyReport {
    let k = res.algebra();
    let unit = s.unit();
    let mut degrees = vec![DegreeCheck {
        degree: -1,
        failure: (unit.augmentation(k) != 1 % k.field().p()).then(|| unit.clone()),
    }];
    for n in 0..=max_degree {
        let mut failure = None;
        for y in res.linear_basis(n) {
            let lower = if n == 0 {
                Ok(unit.scale(k.field(), y.augmentation(k)))
            } else {
                s.apply(n - 1, &res.apply_boundary(n, &y))
            };
            let upper = s.apply(n, &y).map(|z| res.apply_boundary(n + 1, &z));
            let ok = match (lower, upper) {
                (Ok(a), Ok(b)) => a.add(k, &b) == y,
                _ => false,
            };
            if !ok {
                failure = Some(y);
                break;
            }
        }
        degrees.push(DegreeCheck { degree: n as isize, failure });
    }
    HomotopyReport { degrees }
}

/// A chain map between resolutions: `images[n][m] = f_n(e_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    images: Vec<Vec<ModuleElement>>,
}

impl ChainMap {
    pub fn max_degree(&self) -> usize {
        self.images.len() - 1
    }

    pub fn image(&self, n: usize, marker: usize) -> &ModuleElement {
        &self.images[n][marker]
    }

    pub fn degree(&self, n: usize) -> &[ModuleElement] {
        &self.images[n]
    }

    pub fn apply(&self, k: &GroupAlgebra, n: usize, y: &ModuleElement) -> ModuleElement {
        let mut parts = Vec::new();
        for (m, v) in y.terms() {
            for (t, w) in self.images[n][*m].terms() {
                parts.push((*t, k.mul(v, w)));
            }
        }
        ModuleElement::from_terms(k, parts)
    }
}

/// `Σ_e e·s_n(e·y)`; for `n = None` the input is the scalar `x` in degree −1.
fn split_homotopy(split: &[Vec<u32>], k: &GroupAlgebra, s: &dyn Homotopy, n: Option<usize>, y: &ModuleElement, x: u32) -> Result<ModuleElement> {
    let mut acc = ModuleElement::zero();
    for e in split {
        let part = match n {
            None => s.unit().scale(k.field(), k.field().mul(k.augmentation(e), x)),
            Some(n) => s.apply(n, &y.left_mul(k, e))?,
        };
        acc = acc.add(k, &part.left_mul(k, e));
    }
    Ok(acc)
}

/// The comparison map `source → target` through `max_degree`, built from
/// the target homotopy and verified to be a chain map.
pub fn build_comparison(source: &dyn Resolution, target: &dyn Resolution, target_homotopy: &dyn Homotopy, max_degree: usize) -> Result<ChainMap> {
    let k = source.algebra();
    if k != target.algebra() {
        return Err(Error::KindMismatch("resolutions over different group algebras".into()));
    }
    let split = source.idempotent_split();
    let mut images: Vec<Vec<ModuleElement>> = Vec::new();
    let zero = ModuleElement::zero();
    for n in 0..=max_degree {
        let mut row = Vec::with_capacity(source.marker_count(n));
        for m in 0..source.marker_count(n) {
            let img = if n == 0 {
                let eps = k.augmentation(&source.idempotent(0, m));
                split_homotopy(&split, k, target_homotopy, None, &zero, eps)?
            } else {
                let prev = ChainMap { images: std::mem::take(&mut images) };
                let y = prev.apply(k, n - 1, &source.boundary(n, m));
                images = prev.images;
                split_homotopy(&split, k, target_homotopy, Some(n - 1), &y, 0)?
            };
            row.push(img);
        }
        images.push(row);
    }
    let map = ChainMap { images };
    verify_chain_map(source, target, &map)?;
    Ok(map)
}

/// `ε f_0 = ε`, `∂ f_n = f_{n−1} ∂` and `f_n(e_m) = e_m·f_n(e_m)` on every
/// marker.
pub fn verify_chain_map(source: &dyn Resolution, target: &dyn Resolution, map: &ChainMap) -> Result<()> {
    let k = source.algebra();
    for n in 0..=map.max_degree() {
        for m in 0..source.marker_count(n) {
            let img = map.image(n, m);
            let e = source.idempotent(n, m);
            let ok = img.left_mul(k, &e) == *img
                && if n == 0 {
                    img.augmentation(k) == k.augmentation(&e)
                } else {
                    target.apply_boundary(n, img) == map.apply(k, n - 1, &source.boundary(n, m))
                };
            if !ok {
                return Err(Error::NotChainMap { degree: n, marker: m });
            }
        }
    }
    Ok(())
}

fn cyclic_powers(group: &FiniteGroup, generator: usize) -> Result<Vec<usize>> {
    let m = group.order();
    let mut powers = vec![0];
    while powers.len() < m {
        let next = group.mul(*powers.last().expect("nonempty"), generator);
        if next == 0 {
            break;
        }
        powers.push(next);
    }
    if powers.len() != m {
        return Err(Error::NonGroup { reason: "element does not generate the group".into(), witness: vec![generator] });
    }
    Ok(powers)
}

/// The periodic resolution of `k` over `k⟨a⟩` with differentials alternating
/// between `a − 1` and the norm, together with its homotopy:
/// `t_even(a^k) = 1 + a + ... + a^{k−1}` and `t_odd(a^k) = [k = m−1]`.
pub fn cyclic_minimal_resolution_on(group: Arc<FiniteGroup>, generator: usize, field: Fp) -> Result<(BasedResolution, SetwiseHomotopy)> {
    let m = group.order();
    if m % field.p() as usize != 0 {
        return Err(Error::NotModular { p: field.p(), m });
    }
    let powers = cyclic_powers(&group, generator)?;
    let k = GroupAlgebra::new(group, field);
    let unit = k.unit();
    let a_minus_1 = k.from_terms(&[(1, powers[1]), (-1, 0)]);
    let norm = k.from_terms(&powers.iter().map(|&g| (1, g)).collect::<Vec<_>>());
    let term = |d: Option<&Vec<u32>>| Term {
        idempotents: vec![unit.clone()],
        boundary: d.map(|d| vec![ModuleElement::single(0, d.clone())]).unwrap_or_default(),
    };
    let terms = vec![term(None), term(Some(&a_minus_1)), term(Some(&norm))];
    let res = BasedResolution::new(k.clone(), terms, Some(2), vec![unit.clone()])?;
    let even: Vec<_> = (0..m)
        .map(|j| {
            let partial = k.from_terms(&powers[..j].iter().map(|&g| (1, g)).collect::<Vec<_>>());
            (ModuleElement::single(0, k.basis(powers[j])), ModuleElement::single(0, partial))
        })
        .collect();
    let odd: Vec<_> = (0..m)
        .map(|j| {
            let img = if j == m - 1 { ModuleElement::single(0, unit.clone()) } else { ModuleElement::zero() };
            (ModuleElement::single(0, k.basis(powers[j])), img)
        })
        .collect();
    let hom = SetwiseHomotopy::new(&res, ModuleElement::single(0, unit), vec![even.clone(), odd, even])?;
    Ok((res, hom))
}

/// [`cyclic_minimal_resolution_on`] for the cyclic group of order `m`
/// generated by element 1.
pub fn cyclic_minimal_resolution(p: u32, m: usize) -> Result<(BasedResolution, SetwiseHomotopy)> {
    let field = Fp::new(p)?;
    if m % p as usize != 0 {
        return Err(Error::NotModular { p, m });
    }
    cyclic_minimal_resolution_on(Arc::new(FiniteGroup::cyclic(m)), 1.min(m - 1), field)
}

/// `P_0 = kH·e` with `e = |H|⁻¹Σh` and nothing above, for `p ∤ |H|`.
pub fn semisimple_resolution(group: Arc<FiniteGroup>, field: Fp) -> Result<(BasedResolution, SetwiseHomotopy)> {
    let order = group.order();
    if order % field.p() as usize == 0 {
        return Err(Error::Parse(format!("p = {} divides |H| = {order}", field.p())));
    }
    let k = GroupAlgebra::new(group, field);
    let inv = field.inv(field.from_i64(order as i64));
    let e = vec![inv; order];
    let rest = k.sub(&k.unit(), &e);
    let split = if order == 1 { vec![e.clone()] } else { vec![e.clone(), rest] };
    let res = BasedResolution::new(k, vec![Term { idempotents: vec![e.clone()], boundary: Vec::new() }], None, split)?;
    let hom = SetwiseHomotopy::new(&res, ModuleElement::single(0, e.clone()), vec![vec![(ModuleElement::single(0, e), ModuleElement::zero())]])?;
    Ok((res, hom))
}

/// On-disk form of a tabulated resolution with its homotopy. Module elements
/// are lists of `[marker, expression]`, where an expression is a signed sum
/// like `-e2-beta` or `2*a+a2b` over dictionary names and group labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionFile {
    pub group: String,
    pub prime: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub period: Option<usize>,
    #[serde(default)]
    pub dictionary: BTreeMap<String, String>,
    pub split: Vec<String>,
    pub unit: Vec<(usize, String)>,
    pub terms: Vec<TermFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFile {
    pub idempotents: Vec<String>,
    /// Images of the markers; absent in degree 0.
    #[serde(default)]
    pub boundary: Vec<Vec<(usize, String)>>,
    pub homotopy: Vec<HomotopyEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomotopyEntry {
    pub basis: Vec<(usize, String)>,
    pub image: Vec<(usize, String)>,
}

const S3_MINIMAL: &str = include_str!("../data/s3_minimal.json");
const C3_MINIMAL: &str = include_str!("../data/c3_minimal.json");

/// Evaluates a signed sum of names.
fn parse_expression(expr: &str, k: &GroupAlgebra, dict: &BTreeMap<String, Vec<u32>>) -> Result<Vec<u32>> {
    let f = k.field();
    let bad = |why: &str| Error::Parse(format!("expression {expr:?}: {why}"));
    let mut acc = k.zero();
    let s: String = expr.chars().filter(|c| !c.is_whitespace()).collect();
    if s == "0" {
        return Ok(acc);
    }
    let mut rest = s.as_str();
    while !rest.is_empty() {
        let (sign, body) = match rest.as_bytes()[0] {
            b'-' => (-1i64, &rest[1..]),
            b'+' => (1, &rest[1..]),
            _ => (1, rest),
        };
        let end = body.find(['+', '-']).unwrap_or(body.len());
        let (token, tail) = body.split_at(end);
        rest = tail;
        let (coeff, name) = match token.split_once('*') {
            Some((c, n)) => (c.parse::<i64>().map_err(|_| bad("bad coefficient"))?, n),
            None => (1, token),
        };
        if name.is_empty() {
            return Err(bad("empty term"));
        }
        let value = match dict.get(name) {
            Some(v) => v.clone(),
            None => k.basis(k.group().parse_element(name).ok_or_else(|| bad(&format!("unknown name {name}")))?),
        };
        k.add_scaled(&mut acc, f.from_i64(sign * coeff), &value);
    }
    Ok(acc)
}

impl ResolutionFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("resolution file, line {}: {e}", e.line())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn build(&self) -> Result<(BasedResolution, SetwiseHomotopy)> {
        let group = FiniteGroup::builtin(&self.group).ok_or_else(|| Error::Parse(format!("unknown group {}", self.group)))?;
        self.build_on(Arc::new(group))
    }

    /// Builds over a given group whose labels the expressions use.
    pub fn build_on(&self, group: Arc<FiniteGroup>) -> Result<(BasedResolution, SetwiseHomotopy)> {
        let k = GroupAlgebra::new(group, Fp::new(self.prime)?);
        let mut dict = BTreeMap::new();
        for (name, expr) in &self.dictionary {
            let v = parse_expression(expr, &k, &BTreeMap::new())?;
            dict.insert(name.clone(), v);
        }
        let element = |terms: &[(usize, String)]| -> Result<ModuleElement> {
            let parts = terms.iter().map(|(m, e)| Ok((*m, parse_expression(e, &k, &dict)?))).collect::<Result<Vec<_>>>()?;
            Ok(ModuleElement::from_terms(&k, parts))
        };
        let mut terms = Vec::new();
        let mut tables = Vec::new();
        for (n, t) in self.terms.iter().enumerate() {
            let idempotents = t.idempotents.iter().map(|e| parse_expression(e, &k, &dict)).collect::<Result<Vec<_>>>()?;
            if n > 0 && t.boundary.len() != idempotents.len() {
                return Err(Error::DimensionMismatch { expected: idempotents.len(), found: t.boundary.len() });
            }
            let boundary = t.boundary.iter().map(|b| element(b)).collect::<Result<Vec<_>>>()?;
            terms.push(Term { idempotents, boundary });
            tables.push(t.homotopy.iter().map(|h| Ok((element(&h.basis)?, element(&h.image)?))).collect::<Result<Vec<_>>>()?);
        }
        let split = self.split.iter().map(|e| parse_expression(e, &k, &dict)).collect::<Result<Vec<_>>>()?;
        let unit = element(&self.unit)?;
        let res = BasedResolution::new(k.clone(), terms, self.period, split)?;
        let hom = SetwiseHomotopy::new(&res, unit, tables)?;
        Ok((res, hom))
    }
}

/// The period-4 minimal resolution of `F₃` over `F₃S₃` built on the
/// projective covers `Ae₁`, `Ae₂`, with its tabulated homotopy.
pub fn s3_minimal_resolution() -> Result<(BasedResolution, SetwiseHomotopy)> {
    ResolutionFile::from_json(S3_MINIMAL)?.build()
}

pub fn s3_minimal_file() -> ResolutionFile {
    ResolutionFile::from_json(S3_MINIMAL).expect("embedded file parses")
}

pub fn c3_minimal_file() -> ResolutionFile {
    ResolutionFile::from_json(C3_MINIMAL).expect("embedded file parses")
}

/// A module map `P_n → k`, given by its values on the markers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    pub degree: usize,
    pub values: Vec<u32>,
}

impl Form {
    pub fn evaluate(&self, k: &GroupAlgebra, y: &ModuleElement) -> u32 {
        y.terms().iter().fold(0, |a, (m, v)| k.field().mul_add(a, self.values[*m], k.augmentation(v)))
    }
}

fn check_bar_complex(complex: &Complex, k: &GroupAlgebra) -> Result<()> {
    if !matches!(complex.kind(), ComplexKind::GroupTrivial(_)) || complex.base_group().mult_table() != k.group().mult_table() || complex.field() != k.field() {
        return Err(Error::KindMismatch("cochains must be trivial-kind over the resolution's group".into()));
    }
    Ok(())
}

/// `χ(t) = form(Ψ_n(1⊗t))` for a chain map `Ψ` out of the bar resolution.
pub fn transfer_cochain(form: &Form, psi: &ChainMap, k: &GroupAlgebra, complex: &Arc<Complex>) -> Result<Cochain> {
    check_bar_complex(complex, k)?;
    let n = form.degree;
    if n > psi.max_degree() {
        return Err(Error::DegreeMismatch { expected: psi.max_degree(), found: n });
    }
    let values = psi.degree(n).iter().map(|y| form.evaluate(k, y)).collect();
    complex.cochain(n, values)
}

/// `χ∘Φ_n` as a form on the markers, for a chain map `Φ` into the bar
/// resolution.
pub fn restrict_cochain(chi: &Cochain, phi: &ChainMap, k: &GroupAlgebra) -> Result<Form> {
    check_bar_complex(chi.complex(), k)?;
    let n = chi.degree();
    if n > phi.max_degree() {
        return Err(Error::DegreeMismatch { expected: phi.max_degree(), found: n });
    }
    let f = k.field();
    let values = phi
        .degree(n)
        .iter()
        .map(|y| y.terms().iter().fold(0, |a, (t, v)| f.mul_add(a, k.augmentation(v), chi.values()[*t])))
        .collect();
    Ok(Form { degree: n, values })
}

/// Coordinates of the class of `χ` on the dual basis of the minimal term:
/// the values of `χ∘Φ_n` on the markers with `ε(e_m) ≠ 0`.
pub fn identify_class_minimal(chi: &Cochain, res: &BasedResolution, phi: &ChainMap) -> Result<Vec<u32>> {
    let n = chi.degree();
    if !res.boundary_in_radical(n) || !res.boundary_in_radical(n + 1) {
        return Err(Error::NotMinimalHere(n));
    }
    if !chi.is_cocycle() {
        return Err(Error::NotACocycle);
    }
    let k = res.algebra();
    let form = restrict_cochain(chi, phi, k)?;
    Ok((0..res.marker_count(n)).filter(|&m| k.augmentation(&res.idempotent(n, m)) != 0).map(|m| form.values[m]).collect())
}

/// A minimal resolution of a group together with its comparison maps to and
/// from the bar resolution.
#[derive(Debug, Clone)]
pub struct MinimalComparison {
    pub resolution: BasedResolution,
    pub homotopy: SetwiseHomotopy,
    pub bar: BarResolution,
    /// Minimal → bar (built from the bar homotopy).
    pub to_bar: ChainMap,
    /// Bar → minimal (built from the tabulated homotopy).
    pub from_bar: ChainMap,
}

impl MinimalComparison {
    pub fn build(resolution: BasedResolution, homotopy: SetwiseHomotopy, to_bar_degree: usize, from_bar_degree: usize) -> Result<Self> {
        let k = resolution.algebra().clone();
        let bar = BarResolution::new(k.group_arc().clone(), k.field());
        let to_bar = build_comparison(&resolution, &bar, &BarHomotopy::new(&bar), to_bar_degree)?;
        let from_bar = build_comparison(&bar, &resolution, &homotopy, from_bar_degree)?;
        Ok(MinimalComparison { resolution, homotopy, bar, to_bar, from_bar })
    }

    pub fn algebra(&self) -> &GroupAlgebra {
        self.resolution.algebra()
    }

    pub fn identify(&self, chi: &Cochain) -> Result<Vec<u32>> {
        identify_class_minimal(chi, &self.resolution, &self.to_bar)
    }

    /// The cocycle `form∘Ψ_n` with `form` taking `values` on the markers
    /// (a value per marker).
    pub fn representative(&self, complex: &Arc<Complex>, n: usize, values: Vec<u32>) -> Result<Cochain> {
        if values.len() != self.resolution.marker_count(n) {
            return Err(Error::DimensionMismatch { expected: self.resolution.marker_count(n), found: values.len() });
        }
        transfer_cochain(&Form { degree: n, values }, &self.from_bar, self.algebra(), complex)
    }
}

/// Picks a minimal resolution for a centralizer: cyclic groups whose order
/// `p` divides, groups of order prime to `p`, and the shipped `S₃` data at
/// `p = 3`. `None` otherwise.
pub fn minimal_resolution_for(group: Arc<FiniteGroup>, field: Fp) -> Result<Option<(BasedResolution, SetwiseHomotopy)>> {
    let order = group.order();
    let p = field.p() as usize;
    if order % p != 0 {
        return semisimple_resolution(group, field).map(Some);
    }
    if let Some(gen) = (0..order).find(|&g| group.element_order(g) == order) {
        return cyclic_minimal_resolution_on(group, gen, field).map(Some);
    }
    let s3 = FiniteGroup::s3();
    if p == 3 && group.mult_table() == s3.mult_table() {
        return s3_minimal_file().build_on(group).map(Some);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> (BasedResolution, SetwiseHomotopy) {
        cyclic_minimal_resolution(3, 3).unwrap()
    }

    #[test]
    fn bar_homotopy_verifies() {
        let bar = BarResolution::new(Arc::new(FiniteGroup::cyclic(3)), Fp::new(3).unwrap());
        assert!(verify_homotopy(&bar, &BarHomotopy::new(&bar), 3).passed());
        let bar = BarResolution::new(Arc::new(FiniteGroup::s3()), Fp::new(2).unwrap());
        assert!(verify_homotopy(&bar, &BarHomotopy::new(&bar), 2).passed());
    }

    #[test]
    fn cyclic_tables_verify() {
        let (res, hom) = c3();
        assert!(verify_homotopy(&res, &hom, 6).passed());
        let (res, hom) = cyclic_minimal_resolution(2, 2).unwrap();
        assert!(verify_homotopy(&res, &hom, 5).passed());
        assert_eq!(res.boundary(1, 0), res.boundary(2, 0));
        let (res, hom) = cyclic_minimal_resolution(2, 4).unwrap();
        assert!(verify_homotopy(&res, &hom, 5).passed());
        assert!(matches!(cyclic_minimal_resolution(3, 4), Err(Error::NotModular { p: 3, m: 4 })));
    }

    #[test]
    fn shipped_files_verify() {
        let (res, hom) = s3_minimal_resolution().unwrap();
        assert!(verify_homotopy(&res, &hom, 9).passed());
        let (c3_file, c3_hom) = c3_minimal_file().build().unwrap();
        assert!(verify_homotopy(&c3_file, &c3_hom, 5).passed());
        let (gen, _) = c3();
        for n in 1..6 {
            assert_eq!(c3_file.boundary(n, 0), gen.boundary(n, 0));
        }
    }

    #[test]
    fn corrupted_homotopy_fails_at_degree_zero() {
        let mut file = c3_minimal_file();
        file.terms[0].homotopy[1].image = vec![(0, "a".into())];
        let (res, hom) = file.build().unwrap();
        let report = verify_homotopy(&res, &hom, 3);
        let first = report.first_failure().unwrap();
        assert_eq!(first.degree, 0);
        assert_eq!(first.failure, Some(ModuleElement::single(0, res.algebra().basis(1))));
    }

    #[test]
    fn expressions() {
        let k = GroupAlgebra::new(Arc::new(FiniteGroup::s3()), Fp::new(3).unwrap());
        let d = BTreeMap::new();
        assert_eq!(parse_expression("-1-b", &k, &d).unwrap(), k.from_terms(&[(-1, 0), (-1, 3)]));
        assert_eq!(parse_expression("2*a + a2b", &k, &d).unwrap(), k.from_terms(&[(2, 1), (1, 5)]));
        assert_eq!(parse_expression("0", &k, &d).unwrap(), k.zero());
        assert!(parse_expression("c", &k, &d).is_err());
    }

    #[test]
    fn cyclic_comparison_maps() {
        let (res, hom) = c3();
        let cmp = MinimalComparison::build(res, hom, 4, 4).unwrap();
        let k = cmp.algebra().clone();
        let bar = &cmp.bar;
        // Φ₂(1) = 1⊗a⊗a + 1⊗a²⊗a
        let expect = bar.tensor(&k.unit(), &[&k.basis(1), &k.basis(1)]).add(&k, &bar.tensor(&k.unit(), &[&k.basis(2), &k.basis(1)]));
        assert_eq!(cmp.to_bar.image(2, 0), &expect);
        // Ψ₁(1⊗a²) = 1 + a
        assert_eq!(cmp.from_bar.image(1, 1), &ModuleElement::single(0, k.from_terms(&[(1, 0), (1, 1)])));
    }

    #[test]
    fn transfer_and_identify() {
        let grp = Arc::new(FiniteGroup::cyclic(3));
        let field = Fp::new(3).unwrap();
        let (res, hom) = c3();
        let cmp = MinimalComparison::build(res, hom, 4, 4).unwrap();
        let cx = Complex::trivial(grp, field);
        let w1 = cmp.representative(&cx, 1, vec![1]).unwrap();
        assert_eq!(w1.values(), &[1, 2]);
        assert_eq!(cmp.identify(&w1).unwrap(), vec![1]);
        let cob = cx.cochain(0, vec![2]).unwrap().differential();
        assert_eq!(cmp.identify(&cob).unwrap(), vec![0]);
        for n in 0..=4 {
            let chi = cmp.representative(&cx, n, vec![1]).unwrap();
            let form = restrict_cochain(&chi, &cmp.to_bar, cmp.algebra()).unwrap();
            assert_eq!(form.values, vec![1], "degree {n}");
        }
    }

    #[test]
    fn semisimple_case() {
        let field = Fp::new(3).unwrap();
        let grp = Arc::new(FiniteGroup::cyclic(2));
        let (res, hom) = semisimple_resolution(grp.clone(), field).unwrap();
        assert!(verify_homotopy(&res, &hom, 2).passed());
        let cmp = MinimalComparison::build(res, hom, 2, 2).unwrap();
        let cx = Complex::trivial(grp, field);
        let one = cx.cochain(0, vec![1]).unwrap();
        assert_eq!(cmp.identify(&one).unwrap(), vec![1]);
        assert_eq!(cmp.resolution.marker_count(1), 0);
    }
}
