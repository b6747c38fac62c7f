//! Cup product, brace operations, Gerstenhaber bracket and the Δ operator,
//! on the Hochschild complex and componentwise on the additive
//! decomposition.
//!
//! Brace operations accept Hochschild cochains and trivial-kind cochains on
//! the whole group. A trivial-kind cochain `ψ` is inserted through its
//! image `ψ(g)·g_1⋯g_n` in `kG`, which makes the embedding of group
//! cochains into the Hochschild complex compatible with braces.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::complexes::{decode_into, tuple_count, Cochain, Complex, ComplexKind};
use crate::decomposition::{ComponentCochain, Decomposition};
use crate::error::{Error, Result};
use crate::field::Fp;

/// `Δ∘δ = DELTA_DIFFERENTIAL_SIGN · δ∘Δ` on normalized Hochschild cochains
/// (as a residue, `p − 1` means −1). Found by direct evaluation on every
/// fixture group and re-checked in the tests.
pub const DELTA_DIFFERENTIAL_SIGN: i64 = -1;

fn same_complex(f: &Cochain, g: &Cochain) -> Result<()> {
    if f.complex() != g.complex() {
        return Err(Error::KindMismatch(format!(
            "{} cochain over {} (p={}) combined with {} cochain over {} (p={})",
            f.kind().name(),
            f.complex().group().name(),
            f.field().p(),
            g.kind().name(),
            g.complex().group().name(),
            g.field().p()
        )));
    }
    Ok(())
}

/// `(f∪g)(g_1, ..., g_{n+m}) = f(g_1, ..., g_n)·g(g_{n+1}, ..., g_{n+m})`.
///
/// Defined for Hochschild cochains (product in `kG`) and trivial-kind
/// cochains (product of scalars).
pub fn cup(f: &Cochain, g: &Cochain) -> Result<Cochain> {
    same_complex(f, g)?;
    let cx = f.complex();
    if matches!(cx.kind(), ComplexKind::GroupConjugation) {
        return Err(Error::KindMismatch("cup is not provided on the conjugation complex".into()));
    }
    let (n, m) = (f.degree(), g.degree());
    let field = f.field();
    let k = cx.algebra();
    let trivial = cx.width() == 1;
    Ok(cx.from_fn(n + m, |t| {
        let a = f.get(&t[..n]).expect("non-identity tuple");
        let b = g.get(&t[n..]).expect("non-identity tuple");
        if trivial {
            vec![field.mul(a[0], b[0])]
        } else {
            k.mul(a, b)
        }
    }))
}

fn whole_group_trivial(c: &Cochain) -> bool {
    match c.kind() {
        ComplexKind::GroupTrivial(h) => h.group().order() == c.complex().group().order(),
        _ => false,
    }
}

fn check_brace_input(c: &Cochain) -> Result<()> {
    match c.kind() {
        ComplexKind::HochschildKG => Ok(()),
        _ if whole_group_trivial(c) => Ok(()),
        _ => Err(Error::KindMismatch("braces need Hochschild or whole-group trivial cochains".into())),
    }
}

/// The `kG` value inserted into a brace slot.
fn inserted_value(g: &Cochain, t: &[usize]) -> Vec<u32> {
    let v = g.get(t).expect("non-identity tuple");
    if g.width() == 1 {
        let grp = g.complex().group();
        let mut out = vec![0; grp.order()];
        out[grp.product(t)] = v[0];
        out
    } else {
        v.to_vec()
    }
}

/// `f∘ᵢg`: the value of `g` on the block starting at slot `i` (1-based) is
/// substituted as the `i`-th argument of `f`, expanded over the group basis
/// with the identity component dropped. For `m = 0` the degree-0 value of
/// `g` is inserted.
pub fn brace(f: &Cochain, g: &Cochain, i: usize) -> Result<Cochain> {
    check_brace_input(f)?;
    check_brace_input(g)?;
    if f.complex().group() != g.complex().group() || f.field() != g.field() {
        return Err(Error::KindMismatch("brace inputs over different groups or primes".into()));
    }
    let (n, m) = (f.degree(), g.degree());
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, max: n });
    }
    let cx = f.complex();
    let field = f.field();
    let w = cx.width();
    let mut args = vec![0; n];
    Ok(cx.from_fn(n + m - 1, |t| {
        let v = inserted_value(g, &t[i - 1..i - 1 + m]);
        args[..i - 1].copy_from_slice(&t[..i - 1]);
        args[i..].copy_from_slice(&t[i - 1 + m..]);
        let mut out = vec![0; w];
        for (h, &c) in v.iter().enumerate().skip(1) {
            if c == 0 {
                continue;
            }
            args[i - 1] = h;
            let fv = f.get(&args).expect("non-identity tuple");
            for (o, &x) in out.iter_mut().zip(fv) {
                *o = field.mul_add(*o, c, x);
            }
        }
        out
    }))
}

/// `f∘g = Σᵢ (−1)^{(m−1)(i−1)} f∘ᵢg`; `None` when both degrees are 0.
pub fn circ(f: &Cochain, g: &Cochain) -> Result<Option<Cochain>> {
    check_brace_input(f)?;
    check_brace_input(g)?;
    let (n, m) = (f.degree(), g.degree());
    if n + m == 0 {
        return Ok(None);
    }
    let mut acc = f.complex().zero(n + m - 1);
    for i in 1..=n {
        let term = brace(f, g, i)?;
        // (m−1)(i−1) with m = 0 has the parity of i−1
        let e = (m + 1) * (i - 1);
        acc = if e % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(Some(acc))
}

/// `[f,g] = f∘g − (−1)^{(n−1)(m−1)} g∘f`; `None` when both degrees are 0.
pub fn bracket(f: &Cochain, g: &Cochain) -> Result<Option<Cochain>> {
    same_complex(f, g)?;
    let (Some(fg), Some(gf)) = (circ(f, g)?, circ(g, f)?) else {
        return Ok(None);
    };
    let e = (f.degree() + 1) * (g.degree() + 1);
    Ok(Some(if e % 2 == 0 { fg.sub(&gf)? } else { fg.add(&gf)? }))
}

/// The Δ operator `HH^n → HH^{n−1}` at cochain level:
/// `Δ(φ)(g_1..g_{n−1}) = Σ_{g_n} Σᵢ (−1)^{i(n−1)} ⟨φ(gᵢ..g_{n−1}, g_n, g_1..g_{i−1}), 1⟩·g_n⁻¹`.
/// `None` on degree 0, where Δ is zero.
pub fn delta(phi: &Cochain) -> Result<Option<Cochain>> {
    if !matches!(phi.kind(), ComplexKind::HochschildKG) {
        return Err(Error::KindMismatch("Δ is defined on Hochschild cochains".into()));
    }
    let n = phi.degree();
    if n == 0 {
        return Ok(None);
    }
    let cx = phi.complex();
    let grp = cx.group().clone();
    let field = phi.field();
    let order = grp.order();
    let mut arr = vec![0; n];
    Ok(Some(cx.from_fn(n - 1, |t| {
        let mut out = vec![0; order];
        for gn in 1..order {
            let mut c = 0;
            for i in 1..=n {
                // (gᵢ, ..., g_{n−1}, g_n, g_1, ..., g_{i−1})
                let tail = &t[i - 1..];
                arr[..tail.len()].copy_from_slice(tail);
                arr[tail.len()] = gn;
                arr[tail.len() + 1..].copy_from_slice(&t[..i - 1]);
                let v = phi.get(&arr).expect("non-identity tuple")[0];
                c = if (i * (n - 1)) % 2 == 0 { field.add(c, v) } else { field.sub(c, v) };
            }
            let inv = grp.inv(gn);
            out[inv] = field.add(out[inv], c);
        }
        out
    })))
}

/// Cochains indexed by class representatives, all of one degree. Missing
/// representatives stand for zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposedClassFamily {
    pub degree: usize,
    pub components: BTreeMap<usize, ComponentCochain>,
}

impl DecomposedClassFamily {
    pub fn zero(degree: usize) -> Self {
        DecomposedClassFamily { degree, components: BTreeMap::new() }
    }

    pub fn single(psi: ComponentCochain) -> Self {
        let mut components = BTreeMap::new();
        let degree = psi.degree();
        components.insert(psi.rep, psi);
        DecomposedClassFamily { degree, components }
    }

    pub fn get(&self, z: usize) -> Option<&ComponentCochain> {
        self.components.get(&z)
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|c| c.inner.is_zero())
    }

    /// Drops zero components.
    pub fn normalized(mut self) -> Self {
        self.components.retain(|_, c| !c.inner.is_zero());
        self
    }

    fn combine(&self, other: &Self, sub: bool) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, found: other.degree });
        }
        let mut out = self.clone();
        for (&z, c) in &other.components {
            let c = if sub { ComponentCochain { rep: z, inner: c.inner.neg() } } else { c.clone() };
            match out.components.get_mut(&z) {
                Some(slot) => slot.inner = slot.inner.add(&c.inner)?,
                None => {
                    out.components.insert(z, c);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, true)
    }

    pub fn scale(&self, c: u32) -> Self {
        let components = self.components.iter().map(|(&z, x)| (z, ComponentCochain { rep: z, inner: x.inner.scale(c) })).collect();
        DecomposedClassFamily { degree: self.degree, components }
    }

    /// Splits a Hochschild cochain into its components.
    pub fn from_hochschild(dec: &Decomposition, phi: &Cochain) -> Result<Self> {
        if phi.complex() != dec.hochschild() {
            return Err(Error::KindMismatch("expected a Hochschild cochain of this group".into()));
        }
        let components = dec.reps().iter().map(|&x| (x, dec.decompose_unchecked(phi, x))).collect();
        Ok(DecomposedClassFamily { degree: phi.degree(), components })
    }

    /// Sum of the recomposed components.
    pub fn recompose(&self, dec: &Decomposition) -> Result<Cochain> {
        let mut acc = dec.hochschild().zero(self.degree);
        for c in self.components.values() {
            acc = acc.add(&dec.recompose(c)?)?;
        }
        Ok(acc)
    }
}

/// Walk images for every coset index of the class of `x`, as local indices
/// of `C_G(x)`, or `None` where the walk hits the identity.
fn walks(dec: &Decomposition, x: usize, args: &[usize], out: &mut Vec<Option<Vec<usize>>>) -> Result<()> {
    let data = dec.data();
    let r = data.rep_position(x)?;
    let h = dec.centralizer(x)?;
    out.clear();
    let mut walk = vec![0; args.len()];
    for i in 0..data.class_size(r) {
        data.walk_into(r, i, args, &mut walk);
        if walk.contains(&0) {
            out.push(None);
        } else {
            out.push(Some(walk.iter().map(|&w| h.to_local(w).expect("walk stays in the centralizer")).collect()));
        }
    }
    Ok(())
}

fn check_component(dec: &Decomposition, psi: &ComponentCochain) -> Result<()> {
    if psi.inner.complex() != dec.component_complex(psi.rep)? {
        return Err(Error::KindMismatch(format!("component cochain not on the centralizer of {}", psi.rep)));
    }
    Ok(())
}

/// Shared driver for the two decomposed cup formulas. `split` maps an
/// ambient tuple to the element entering the condition and the argument
/// ranges of the `x`- and `y`-walks; `condition(xᵢ, yⱼ, that element, z)`
/// selects the pairs that count.
fn cup_family(
    dec: &Decomposition,
    psi_x: &ComponentCochain,
    psi_y: &ComponentCochain,
    sign: u32,
    split: impl Fn(&[usize]) -> (usize, std::ops::Range<usize>, std::ops::Range<usize>),
    condition: impl Fn(usize, usize, usize, usize) -> bool,
) -> Result<DecomposedClassFamily> {
    check_component(dec, psi_x)?;
    check_component(dec, psi_y)?;
    let field = dec.field();
    let data = dec.data();
    let (x, y) = (psi_x.rep, psi_y.rep);
    let (rx, ry) = (data.rep_position(x)?, data.rep_position(y)?);
    let deg = psi_x.degree() + psi_y.degree();
    let mut family = DecomposedClassFamily::zero(deg);
    let mut wx = Vec::new();
    let mut wy = Vec::new();
    for &z in dec.reps() {
        let cz = dec.component_complex(z)?.clone();
        let hz = dec.centralizer(z)?.clone();
        let m = cz.base_order();
        let mut t = vec![0; deg];
        let mut amb = vec![0; deg];
        let mut vals = vec![0; tuple_count(m, deg)];
        for (idx, slot) in vals.iter_mut().enumerate() {
            decode_into(idx, m, &mut t);
            for (a, &l) in amb.iter_mut().zip(&t) {
                *a = hz.to_ambient(l);
            }
            let (conj, xr, yr) = split(&amb);
            walks(dec, x, &amb[xr], &mut wx)?;
            walks(dec, y, &amb[yr], &mut wy)?;
            let mut acc = 0;
            for (i, a) in wx.iter().enumerate() {
                let Some(a) = a else { continue };
                let va = psi_x.inner.scalar(a);
                if va == 0 {
                    continue;
                }
                for (j, b) in wy.iter().enumerate() {
                    let Some(b) = b else { continue };
                    if condition(data.classes[rx][i], data.classes[ry][j], conj, z) {
                        acc = field.mul_add(acc, va, psi_y.inner.scalar(b));
                    }
                }
            }
            *slot = field.mul(sign, acc);
        }
        let inner = cz.cochain(deg, vals)?;
        if !inner.is_zero() {
            family.components.insert(z, ComponentCochain { rep: z, inner });
        }
    }
    Ok(family)
}

/// Componentwise cup product in the canonical realization:
/// `(ψx∪ψy)_z(h) = Σ ψx(walk_i(h_1..h_n))·ψy(walk_j(h_{n+1}..h_{n+m}))` over
/// pairs with `xᵢ·P·yⱼ·P⁻¹ = z`, `P = h_1⋯h_n`.
pub fn cup_decomposed(dec: &Decomposition, psi_x: &ComponentCochain, psi_y: &ComponentCochain) -> Result<DecomposedClassFamily> {
    let grp = dec.group();
    let n = psi_x.degree();
    cup_family(
        dec,
        psi_x,
        psi_y,
        1 % dec.field().p(),
        |amb| (grp.product(&amb[..n]), 0..n, n..amb.len()),
        |xi, yj, p, z| grp.mul(grp.mul(xi, p), grp.mul(yj, grp.inv(p))) == z,
    )
}

/// Componentwise cup product in the first realization, with the sign
/// `(−1)^{nm}`, the condition `Q·xᵢ·Q⁻¹·yⱼ = z` for `Q = h_1⋯h_m`, the
/// `x`-walks over the last `n` arguments and the `y`-walks over the first
/// `m`.
pub fn cup_decomposed_first(dec: &Decomposition, psi_x: &ComponentCochain, psi_y: &ComponentCochain) -> Result<DecomposedClassFamily> {
    let grp = dec.group();
    let (n, m) = (psi_x.degree(), psi_y.degree());
    cup_family(
        dec,
        psi_x,
        psi_y,
        dec.field().sign(n * m),
        |amb| (grp.product(&amb[..m]), m..amb.len(), 0..m),
        |xi, yj, q, z| grp.mul(grp.conjugate(xi, grp.inv(q)), yj) == z,
    )
}

/// `Δ̂ₓ(ψ)(h_1..h_{n−1}) = Σᵢ (−1)^{i(n−1)} ψ(hᵢ..h_{n−1}, (x·h_1⋯h_{n−1})⁻¹, h_1..h_{i−1})`;
/// `None` on degree 0.
pub fn delta_hat(dec: &Decomposition, psi: &ComponentCochain) -> Result<Option<ComponentCochain>> {
    check_component(dec, psi)?;
    let n = psi.degree();
    if n == 0 {
        return Ok(None);
    }
    let x = psi.rep;
    let cx = dec.component_complex(x)?.clone();
    let h = dec.centralizer(x)?.clone();
    let grp = dec.group().clone();
    let field = dec.field();
    let mut amb = vec![0; n - 1];
    let mut arr = vec![0; n];
    let inner = cx.from_fn(n - 1, |t| {
        for (a, &l) in amb.iter_mut().zip(t) {
            *a = h.to_ambient(l);
        }
        let ins = grp.inv(grp.mul(x, grp.product(&amb)));
        if ins == 0 {
            return vec![0];
        }
        let ins = h.to_local(ins).expect("inserted element centralizes x");
        let mut c = 0;
        for i in 1..=n {
            let tail = &t[i - 1..];
            arr[..tail.len()].copy_from_slice(tail);
            arr[tail.len()] = ins;
            arr[tail.len() + 1..].copy_from_slice(&t[..i - 1]);
            let v = psi.inner.scalar(&arr);
            c = if (i * (n - 1)) % 2 == 0 { field.add(c, v) } else { field.sub(c, v) };
        }
        vec![c]
    });
    Ok(Some(ComponentCochain { rep: x, inner }))
}

/// The operations the BV formulas need, on whatever carries the elements.
pub trait BvModel {
    type Elem: Clone;

    fn field(&self) -> Fp;
    fn degree(&self, a: &Self::Elem) -> usize;
    fn zero(&self, degree: usize) -> Self::Elem;
    fn cup(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    /// `None` on degree 0.
    fn delta(&self, a: &Self::Elem) -> Result<Option<Self::Elem>>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn scale(&self, c: u32, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let nb = self.scale(self.field().p() - 1, b);
        self.add(a, &nb)
    }

    /// Δ with degree-0 inputs sent to the zero element of degree `fallback`.
    fn delta_or_zero(&self, a: &Self::Elem, fallback: usize) -> Result<Self::Elem> {
        Ok(self.delta(a)?.unwrap_or_else(|| self.zero(fallback)))
    }

    fn signed(&self, exponent: usize, a: &Self::Elem) -> Self::Elem {
        self.scale(self.field().sign(exponent), a)
    }
}

/// Elements are Hochschild cochains.
#[derive(Debug, Clone)]
pub struct HochschildModel {
    complex: Arc<Complex>,
}

impl HochschildModel {
    pub fn new(complex: Arc<Complex>) -> Result<Self> {
        if !matches!(complex.kind(), ComplexKind::HochschildKG) {
            return Err(Error::KindMismatch("expected the Hochschild complex".into()));
        }
        Ok(HochschildModel { complex })
    }

    pub fn complex(&self) -> &Arc<Complex> {
        &self.complex
    }
}

impl BvModel for HochschildModel {
    type Elem = Cochain;

    fn field(&self) -> Fp {
        self.complex.field()
    }

    fn degree(&self, a: &Cochain) -> usize {
        a.degree()
    }

    fn zero(&self, degree: usize) -> Cochain {
        self.complex.zero(degree)
    }

    fn cup(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        cup(a, b)
    }

    fn delta(&self, a: &Cochain) -> Result<Option<Cochain>> {
        delta(a)
    }

    fn add(&self, a: &Cochain, b: &Cochain) -> Result<Cochain> {
        a.add(b)
    }

    fn scale(&self, c: u32, a: &Cochain) -> Cochain {
        a.scale(c)
    }
}

/// Elements are families of centralizer cochains; the product is
/// [`cup_decomposed`] extended bilinearly and Δ is [`delta_hat`]
/// componentwise.
#[derive(Debug, Clone, Copy)]
pub struct DecomposedModel<'a> {
    dec: &'a Decomposition,
}

impl<'a> DecomposedModel<'a> {
    pub fn new(dec: &'a Decomposition) -> Self {
        DecomposedModel { dec }
    }

    pub fn decomposition(&self) -> &'a Decomposition {
        self.dec
    }
}

impl BvModel for DecomposedModel<'_> {
    type Elem = DecomposedClassFamily;

    fn field(&self) -> Fp {
        self.dec.field()
    }

    fn degree(&self, a: &DecomposedClassFamily) -> usize {
        a.degree
    }

    fn zero(&self, degree: usize) -> DecomposedClassFamily {
        DecomposedClassFamily::zero(degree)
    }

    fn cup(&self, a: &DecomposedClassFamily, b: &DecomposedClassFamily) -> Result<DecomposedClassFamily> {
        let mut acc = DecomposedClassFamily::zero(a.degree + b.degree);
        for x in a.components.values() {
            if x.inner.is_zero() {
                continue;
            }
            for y in b.components.values() {
                if y.inner.is_zero() {
                    continue;
                }
                acc = acc.add(&cup_decomposed(self.dec, x, y)?)?;
            }
        }
        Ok(acc.normalized())
    }

    fn delta(&self, a: &DecomposedClassFamily) -> Result<Option<DecomposedClassFamily>> {
        if a.degree == 0 {
            return Ok(None);
        }
        let mut out = DecomposedClassFamily::zero(a.degree - 1);
        for c in a.components.values() {
            let d = delta_hat(self.dec, c)?.expect("positive degree");
            out.components.insert(c.rep, d);
        }
        Ok(Some(out.normalized()))
    }

    fn add(&self, a: &DecomposedClassFamily, b: &DecomposedClassFamily) -> Result<DecomposedClassFamily> {
        Ok(a.add(b)?.normalized())
    }

    fn scale(&self, c: u32, a: &DecomposedClassFamily) -> DecomposedClassFamily {
        a.scale(c).normalized()
    }
}

/// `[α,β] = −(−1)^{(|α|−1)|β|}(Δ(αβ) − Δ(α)β − (−1)^{|α|}αΔ(β))`, at cochain
/// level. `None` when both degrees are 0.
pub fn bracket_via_bv<M: BvModel>(model: &M, a: &M::Elem, b: &M::Elem) -> Result<Option<M::Elem>> {
    let (n, m) = (model.degree(a), model.degree(b));
    if n + m == 0 {
        return Ok(None);
    }
    let d = n + m - 1;
    let t1 = model.delta_or_zero(&model.cup(a, b)?, d)?;
    let t2 = match model.delta(a)? {
        Some(da) => model.cup(&da, b)?,
        None => model.zero(d),
    };
    let t3 = match model.delta(b)? {
        Some(db) => model.signed(n, &model.cup(a, &db)?),
        None => model.zero(d),
    };
    let inner = model.sub(&model.sub(&t1, &t2)?, &t3)?;
    // −(−1)^{(n−1)m}
    Ok(Some(model.signed((n + 1) * m + 1, &inner)))
}

/// Left side minus right side of the seven-term identity
/// `Δ(abc) = Δ(ab)c + (−1)^{|a|}aΔ(bc) + (−1)^{(|a|−1)|b|}bΔ(ac)
///  − Δ(a)bc − (−1)^{|a|}aΔ(b)c − (−1)^{|a|+|b|}abΔ(c)`.
/// `None` when all three degrees are 0.
pub fn seven_term_residual<M: BvModel>(model: &M, a: &M::Elem, b: &M::Elem, c: &M::Elem) -> Result<Option<M::Elem>> {
    let (p, q, r) = (model.degree(a), model.degree(b), model.degree(c));
    if p + q + r == 0 {
        return Ok(None);
    }
    let d = p + q + r - 1;
    let ab = model.cup(a, b)?;
    let lhs = model.delta_or_zero(&model.cup(&ab, c)?, d)?;
    // a Δ of a degree-0 product is zero; its term is then zero in degree d
    let pair_term = |x: &M::Elem, y: &M::Elem, deg: usize, outer: &M::Elem, outer_first: bool| -> Result<M::Elem> {
        if deg == 0 {
            return Ok(model.zero(d));
        }
        let dxy = model.delta(&model.cup(x, y)?)?.expect("positive degree");
        if outer_first {
            model.cup(outer, &dxy)
        } else {
            model.cup(&dxy, outer)
        }
    };
    let mut terms: Vec<(usize, M::Elem)> = vec![
        (0, pair_term(a, b, p + q, c, false)?),
        (p, pair_term(b, c, q + r, a, true)?),
        ((p + 1) * q, pair_term(a, c, p + r, b, true)?),
    ];
    if let Some(da) = model.delta(a)? {
        terms.push((1, model.cup(&model.cup(&da, b)?, c)?));
    }
    if let Some(db) = model.delta(b)? {
        terms.push((p + 1, model.cup(&model.cup(a, &db)?, c)?));
    }
    if let Some(dc) = model.delta(c)? {
        terms.push((p + q + 1, model.cup(&ab, &dc)?));
    }
    let mut rhs = model.zero(d);
    for (e, t) in terms {
        rhs = model.add(&rhs, &model.signed(e, &t))?;
    }
    Ok(Some(model.sub(&lhs, &rhs)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    fn f3() -> Fp {
        Fp::new(3).unwrap()
    }

    fn s3() -> Decomposition {
        Decomposition::new(Arc::new(FiniteGroup::s3()), f3())
    }

    fn w1(d: &Decomposition) -> ComponentCochain {
        d.component(1, d.component_complex(1).unwrap().cochain(1, vec![1, 2]).unwrap()).unwrap()
    }

    #[test]
    fn degree_zero_cup_is_the_group_algebra_product() {
        let cx = Complex::hochschild(Arc::new(FiniteGroup::s3()), f3());
        let k = cx.algebra();
        let c1 = cx.cochain(0, k.from_terms(&[(1, 0), (1, 1), (1, 2)])).unwrap();
        assert!(cup(&c1, &c1).unwrap().is_zero());
        let one = cx.cochain(0, k.unit()).unwrap();
        let phi = cx.from_fn(2, |t| k.basis(t[0]));
        assert_eq!(cup(&phi, &one).unwrap(), phi);
        assert_eq!(cup(&one, &phi).unwrap(), phi);
    }

    #[test]
    fn delta_hat_on_w1_and_w2() {
        let d = s3();
        let dw1 = delta_hat(&d, &w1(&d)).unwrap().unwrap();
        assert_eq!(dw1.inner.values(), &[2]);
        let w2 = d.component(1, d.component_complex(1).unwrap().cochain(2, vec![0, 1, 1, 1]).unwrap()).unwrap();
        let dw2 = delta_hat(&d, &w2).unwrap().unwrap();
        assert!(dw2.inner.is_zero());
        assert_eq!(delta_hat(&d, &d.component_zero(1, 0).unwrap()).unwrap(), None);
    }

    #[test]
    fn delta_matches_delta_hat_on_w1() {
        let d = s3();
        let phi = d.recompose(&w1(&d)).unwrap();
        let dphi = delta(&phi).unwrap().unwrap();
        assert_eq!(d.decompose(&dphi, 1).unwrap().inner.values(), &[2]);
    }

    #[test]
    fn brace_inserts_degree_zero_values() {
        let cx = Complex::hochschild(Arc::new(FiniteGroup::cyclic(3)), f3());
        let k = cx.algebra();
        let f = cx.from_fn(1, |t| k.basis(t[0]));
        let g = cx.cochain(0, k.from_terms(&[(1, 0), (2, 1)])).unwrap();
        let r = brace(&f, &g, 1).unwrap();
        assert_eq!(r.values(), k.from_terms(&[(2, 1)]).as_slice());
        assert_eq!(brace(&f, &g, 2).unwrap_err(), Error::IndexOutOfRange { index: 2, max: 1 });
        assert_eq!(bracket(&g, &g).unwrap(), None);
    }

    #[test]
    fn delta_differential_sign() {
        let field = f3();
        for grp in [FiniteGroup::cyclic(3), FiniteGroup::s3()] {
            let cx = Complex::hochschild(Arc::new(grp), field);
            let m = cx.base_order();
            for n in 1..=2 {
                let phi = cx.from_fn(n, |t| (0..m).map(|h| ((t.iter().sum::<usize>() * 7 + h * 5 + h * h) % 3) as u32).collect());
                let lhs = delta(&phi.differential()).unwrap().unwrap();
                let rhs = delta(&phi).unwrap().unwrap().differential();
                assert_eq!(lhs, rhs.scale(field.from_i64(DELTA_DIFFERENTIAL_SIGN)), "degree {n}");
            }
        }
    }
}
