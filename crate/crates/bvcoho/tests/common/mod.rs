//! Randomized invariant checks shared by the property suites and the
//! acceptance target. Each check draws its inputs from the given rng and
//! returns a description of the first violation.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use bvcoho::bv::{bracket, bracket_via_bv, brace, cup, delta, delta_hat, seven_term_residual, HochschildModel};
use bvcoho::complexes::{Cochain, Complex, DegreeCaps};
use bvcoho::decomposition::{ComponentCochain, Decomposition};
use bvcoho::field::Fp;
use bvcoho::group::FiniteGroup;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Check = fn(&Fixture, &mut ChaCha8Rng) -> Result<(), String>;

pub struct Fixture {
    pub name: String,
    pub dec: Decomposition,
    pub hh_model: HochschildModel,
    cocycles: Mutex<HashMap<usize, Vec<Vec<u32>>>>,
}

impl Fixture {
    fn new(group: FiniteGroup, p: u32) -> Self {
        let name = format!("{} p={p}", group.name());
        let dec = Decomposition::new(Arc::new(group), Fp::new(p).unwrap());
        let hh_model = HochschildModel::new(dec.hochschild().clone()).unwrap();
        Fixture { name, dec, hh_model, cocycles: Mutex::new(HashMap::new()) }
    }

    pub fn p(&self) -> u32 {
        self.dec.field().p()
    }

    pub fn hh(&self) -> &Arc<Complex> {
        self.dec.hochschild()
    }

    pub fn abelian(&self) -> bool {
        self.dec.group().is_abelian()
    }

    pub fn random(&self, cx: &Arc<Complex>, n: usize, rng: &mut ChaCha8Rng) -> Cochain {
        let (p, w) = (self.p(), cx.width());
        cx.from_fn(n, |_| (0..w).map(|_| rng.gen_range(0..p)).collect())
    }

    pub fn random_rep(&self, rng: &mut ChaCha8Rng) -> usize {
        let reps = self.dec.reps();
        reps[rng.gen_range(0..reps.len())]
    }

    pub fn random_component(&self, x: usize, n: usize, rng: &mut ChaCha8Rng) -> ComponentCochain {
        let cx = self.dec.component_complex(x).unwrap().clone();
        let inner = self.random(&cx, n, rng);
        self.dec.component(x, inner).unwrap()
    }

    /// A random Hochschild cocycle: a combination of cohomology
    /// representatives plus a random coboundary.
    pub fn random_cocycle(&self, n: usize, rng: &mut ChaCha8Rng) -> Cochain {
        let reps = {
            let mut cache = self.cocycles.lock().unwrap();
            cache
                .entry(n)
                .or_insert_with(|| self.hh().cohomology(n, &DegreeCaps::default()).unwrap().representatives().to_vec())
                .clone()
        };
        let f = self.dec.field();
        let mut acc = if n == 0 { self.hh().zero(0) } else { self.random(self.hh(), n - 1, rng).differential() };
        for r in reps {
            let c = rng.gen_range(0..self.p());
            let term = self.hh().cochain(n, r).unwrap().scale(c);
            acc = acc.add(&term).unwrap();
        }
        debug_assert!(acc.is_cocycle(), "{f:?}");
        acc
    }
}

/// `C₂, C₃, C₄, S₃` at `p = 2, 3`.
pub fn fixtures() -> &'static [Fixture] {
    static F: OnceLock<Vec<Fixture>> = OnceLock::new();
    F.get_or_init(|| {
        let mut out = Vec::new();
        for p in [2, 3] {
            for g in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3), FiniteGroup::cyclic(4), FiniteGroup::s3()] {
                out.push(Fixture::new(g, p));
            }
        }
        out
    })
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn max_degree(fx: &Fixture, small: usize, big: usize) -> usize {
    if fx.dec.group().order() > 4 {
        small
    } else {
        big
    }
}

pub fn differential_squares_to_zero(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let x = fx.random_rep(rng);
    let cx = match rng.gen_range(0..4) {
        0 => fx.hh().clone(),
        1 => fx.dec.conjugation().clone(),
        2 => Complex::trivial(fx.dec.group().clone(), fx.dec.field()),
        _ => fx.dec.component_complex(x).unwrap().clone(),
    };
    let n = rng.gen_range(0..=2);
    let c = fx.random(&cx, n, rng);
    ensure(c.differential().differential().is_zero(), || format!("δδ ≠ 0 on a {} cochain of degree {n}", cx.kind().name()))
}

pub fn delta_squares_to_zero(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(2..=max_degree(fx, 3, 4));
    let phi = fx.random(fx.hh(), n, rng);
    let d1 = delta(&phi).unwrap().unwrap();
    let d2 = delta(&d1).unwrap().unwrap();
    ensure(d2.is_zero(), || format!("ΔΔ ≠ 0 in degree {n}"))
}

fn random_in_component(fx: &Fixture, rng: &mut ChaCha8Rng, lo: usize) -> (usize, Cochain) {
    let x = fx.random_rep(rng);
    let n = rng.gen_range(lo..=max_degree(fx, 3, 4));
    let phi = fx.random(fx.hh(), n, rng);
    (x, fx.dec.component_project(&phi, x).unwrap())
}

pub fn delta_preserves_components(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (x, phi) = random_in_component(fx, rng, 1);
    let d = delta(&phi).unwrap().unwrap();
    ensure(fx.dec.component_project(&d, x).unwrap() == d, || format!("Δ leaves the component of {x} in degree {}", phi.degree()))
}

pub fn delta_commutes_with_decompose(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (x, phi) = random_in_component(fx, rng, 1);
    let lhs = fx.dec.decompose(&delta(&phi).unwrap().unwrap(), x).map_err(|e| e.to_string())?;
    let rhs = delta_hat(&fx.dec, &fx.dec.decompose(&phi, x).unwrap()).unwrap().unwrap();
    ensure(lhs == rhs, || format!("decompose∘Δ ≠ Δ̂∘decompose at {x}, degree {}", phi.degree()))
}

pub fn decompose_inverts_recompose(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let x = fx.random_rep(rng);
    let n = rng.gen_range(0..=max_degree(fx, 3, 4));
    let psi = fx.random_component(x, n, rng);
    let phi = fx.dec.recompose(&psi).unwrap();
    let back = fx.dec.decompose(&phi, x).map_err(|e| e.to_string())?;
    ensure(back == psi, || format!("decompose∘recompose ≠ id at {x}, degree {n}"))
}

pub fn projections_sum_to_identity(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(0..=3);
    let phi = fx.random(fx.hh(), n, rng);
    let mut acc = fx.hh().zero(n);
    for &x in fx.dec.reps() {
        let px = fx.dec.component_project(&phi, x).unwrap();
        ensure(fx.dec.component_project(&px, x).unwrap() == px, || format!("projection to {x} is not idempotent"))?;
        for &y in fx.dec.reps().iter().filter(|&&y| y != x) {
            ensure(fx.dec.component_project(&px, y).unwrap().is_zero(), || format!("projections to {x} and {y} overlap"))?;
        }
        acc = acc.add(&px).unwrap();
    }
    ensure(acc == phi, || format!("Σ projections ≠ id in degree {n}"))
}

pub fn cup_is_associative(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let top = max_degree(fx, 4, 5);
    let a = rng.gen_range(0..=2);
    let b = rng.gen_range(0..=(top - a).min(2));
    let c = rng.gen_range(0..=top - a - b);
    let cx = if rng.gen_bool(0.5) { fx.hh().clone() } else { Complex::trivial(fx.dec.group().clone(), fx.dec.field()) };
    let (f, g, h) = (fx.random(&cx, a, rng), fx.random(&cx, b, rng), fx.random(&cx, c, rng));
    let l = cup(&cup(&f, &g).unwrap(), &h).unwrap();
    let r = cup(&f, &cup(&g, &h).unwrap()).unwrap();
    ensure(l == r, || format!("cup not associative in degrees ({a},{b},{c})"))
}

pub fn bracket_is_antisymmetric(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let top = max_degree(fx, 4, 5);
    let n = rng.gen_range(0..=3);
    let m = rng.gen_range(usize::from(n == 0)..=(top - n).min(3));
    let (f, g) = (fx.random(fx.hh(), n, rng), fx.random(fx.hh(), m, rng));
    let fg = bracket(&f, &g).unwrap().unwrap();
    let gf = bracket(&g, &f).unwrap().unwrap();
    let sign = fx.dec.field().sign((n + 1) * (m + 1) + 1);
    ensure(fg == gf.scale(sign), || format!("[f,g] ≠ −(−1)^((n−1)(m−1))[g,f] in degrees ({n},{m})"))
}

fn coboundary(fx: &Fixture, c: &Cochain) -> Result<bool, String> {
    fx.hh().is_coboundary(c).map(|o| o.is_some()).map_err(|e| e.to_string())
}

pub fn bracket_paths_agree(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(0..=2);
    let m = rng.gen_range(usize::from(n == 0)..=3 - n);
    let (f, g) = (fx.random_cocycle(n, rng), fx.random_cocycle(m, rng));
    let brace_side = bracket(&f, &g).unwrap().unwrap();
    let bv_side = bracket_via_bv(&fx.hh_model, &f, &g).unwrap().unwrap();
    let diff = brace_side.sub(&bv_side).unwrap();
    ensure(coboundary(fx, &diff)?, || format!("brace and BV brackets differ in cohomology, degrees ({n},{m})"))
}

pub fn seven_term_vanishes(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = rng.gen_range(0..=2);
    let b = rng.gen_range(0..=2 - a);
    let c = rng.gen_range(usize::from(a + b == 0)..=3 - a - b);
    let (x, y, z) = (fx.random_cocycle(a, rng), fx.random_cocycle(b, rng), fx.random_cocycle(c, rng));
    let res = seven_term_residual(&fx.hh_model, &x, &y, &z).unwrap().unwrap();
    ensure(coboundary(fx, &res)?, || format!("seven-term residual is not a coboundary, degrees ({a},{b},{c})"))
}

/// On abelian groups every centralizer is the whole group, so Δ on the
/// `x`-component is `x⊗Δ̄ₓ` and recomposition commutes with it.
pub fn abelian_delta_is_componentwise(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    if !fx.abelian() {
        return Ok(());
    }
    let x = fx.random_rep(rng);
    let n = rng.gen_range(1..=4);
    let psi = fx.random_component(x, n, rng);
    let phi = fx.dec.recompose(&psi).unwrap();
    let d = delta(&phi).unwrap().unwrap();
    let want = fx.dec.recompose(&delta_hat(&fx.dec, &psi).unwrap().unwrap()).unwrap();
    ensure(d == want, || format!("Δ∘recompose ≠ recompose∘Δ̂ at {x}, degree {n}"))
}

pub fn embedding_preserves_braces(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let triv = fx.dec.component_complex(0).unwrap().clone();
    let n = rng.gen_range(1..=2);
    let m = rng.gen_range(0..=2);
    let i = rng.gen_range(1..=n);
    let (a, b) = (fx.random(&triv, n, rng), fx.random(&triv, m, rng));
    let lhs = brace(&fx.dec.embed_group_cochain(&a).unwrap(), &fx.dec.embed_group_cochain(&b).unwrap(), i).unwrap();
    let rhs = fx.dec.embed_group_cochain(&brace(&a, &b, i).unwrap()).unwrap();
    ensure(lhs == rhs, || format!("embed(a)∘{i}embed(b) ≠ embed(a∘{i}b) in degrees ({n},{m})"))
}

pub fn automorphism_bridges_realizations(fx: &Fixture, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let x = fx.random_rep(rng);
    let n = rng.gen_range(0..=3);
    let phi = fx.random(fx.hh(), n, rng);
    let bridged = fx.dec.realization_bridge(&phi).unwrap();
    ensure(fx.dec.decompose_first(&phi, x).unwrap() == fx.dec.decompose_unchecked(&bridged, x), || {
        format!("first realization ≠ second realization after the automorphism at {x}, degree {n}")
    })?;
    let psi = fx.random_component(x, n, rng);
    let back = fx.dec.decompose_first(&fx.dec.recompose_first(&psi).unwrap(), x).unwrap();
    ensure(back == psi, || format!("decompose_first∘recompose_first ≠ id at {x}, degree {n}"))
}

pub const CHECKS: &[(&str, Check)] = &[
    ("δ² = 0", differential_squares_to_zero),
    ("Δ² = 0", delta_squares_to_zero),
    ("Δ preserves components", delta_preserves_components),
    ("decompose∘Δ = Δ̂∘decompose", delta_commutes_with_decompose),
    ("decompose∘recompose = id", decompose_inverts_recompose),
    ("Σ projections = id", projections_sum_to_identity),
    ("cup associativity", cup_is_associative),
    ("bracket antisymmetry", bracket_is_antisymmetric),
    ("brace bracket ~ BV bracket", bracket_paths_agree),
    ("seven-term residual ~ 0", seven_term_vanishes),
    ("abelian Δ componentwise", abelian_delta_is_componentwise),
    ("embedding preserves braces", embedding_preserves_braces),
    ("realization automorphism", automorphism_bridges_realizations),
];
