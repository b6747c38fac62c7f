//! Class identification across all centralizers, and the `F₃S₃` worked
//! example as a list of checks.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::bv::{bracket_via_bv, cup, delta_hat, BvModel, DecomposedClassFamily, DecomposedModel};
use crate::comparison::{minimal_resolution_for, MinimalComparison};
use crate::complexes::DegreeCaps;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::field::Fp;
use crate::group::FiniteGroup;

/// Coordinates of a decomposed class: per representative, the values on
/// the dual basis of the minimal term in that degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCoordinates {
    pub degree: usize,
    pub components: Vec<(String, Vec<u32>)>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|(_, v)| v.iter().all(|&c| c == 0))
    }
}

impl fmt::Display for ClassCoordinates {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|(l, v)| format!("{l}:{v:?}"))
            .collect();
        write!(f, "deg {} {{{}}}", self.degree, parts.join(" "))
    }
}

/// Minimal comparisons for every centralizer of a decomposition.
pub struct ClassIdentifier {
    dec: Decomposition,
    comparisons: BTreeMap<usize, MinimalComparison>,
}

impl ClassIdentifier {
    /// `to_bar_degree` bounds identification, `from_bar_degree` bounds
    /// transferred representatives. Fails if some centralizer has no known
    /// minimal resolution.
    pub fn new(group: Arc<FiniteGroup>, field: Fp, to_bar_degree: usize, from_bar_degree: usize) -> Result<Self> {
        let dec = Decomposition::new(group, field);
        let mut comparisons = BTreeMap::new();
        for &x in dec.reps() {
            let local = Arc::new(dec.centralizer(x)?.group().clone());
            let (res, hom) = minimal_resolution_for(local, field)?
                .ok_or_else(|| Error::KindMismatch(format!("no minimal resolution known for the centralizer of {x}")))?;
            comparisons.insert(x, MinimalComparison::build(res, hom, to_bar_degree, from_bar_degree)?);
        }
        Ok(ClassIdentifier { dec, comparisons })
    }

    pub fn decomposition(&self) -> &Decomposition {
        &self.dec
    }

    pub fn comparison(&self, x: usize) -> Result<&MinimalComparison> {
        self.comparisons.get(&x).ok_or(Error::NotARepresentative(x))
    }

    pub fn identify(&self, fam: &DecomposedClassFamily) -> Result<ClassCoordinates> {
        let mut components = Vec::new();
        for &x in self.dec.reps() {
            let zero;
            let inner = match fam.get(x) {
                Some(c) => &c.inner,
                None => {
                    zero = self.dec.component_zero(x, fam.degree)?;
                    &zero.inner
                }
            };
            components.push((self.dec.group().label(x), self.comparison(x)?.identify(inner)?));
        }
        Ok(ClassCoordinates { degree: fam.degree, components })
    }

    /// The family supported at `x` whose component is `form∘Ψ_n`.
    pub fn representative(&self, x: usize, n: usize, values: Vec<u32>) -> Result<DecomposedClassFamily> {
        let inner = self.comparison(x)?.representative(self.dec.component_complex(x)?, n, values)?;
        Ok(DecomposedClassFamily::single(self.dec.component(x, inner)?))
    }

    /// The degree-0 family with constant value `c` at `x`.
    pub fn constant(&self, x: usize, c: u32) -> Result<DecomposedClassFamily> {
        let inner = self.dec.component_complex(x)?.cochain(0, vec![c])?;
        Ok(DecomposedClassFamily::single(self.dec.component(x, inner)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Section {
    Dimensions,
    DeltaHat,
    Brackets,
    Relations,
}

impl fmt::Display for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Section::Dimensions => "dimensions",
            Section::DeltaHat => "delta-hat",
            Section::Brackets => "brackets",
            Section::Relations => "relations",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub section: Section,
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub prime: u32,
    pub hochschild_dims: Vec<usize>,
    pub component_dims: Vec<(String, Vec<usize>)>,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn section(&self, s: Section) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.section == s)
    }

    pub fn find(&self, label: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.label == label)
    }

    /// Plain-text table, one check per line.
    pub fn table(&self) -> String {
        let mut out = format!("F{}S3  HH dims {:?}\n", self.prime, self.hochschild_dims);
        for (l, d) in &self.component_dims {
            out += &format!("  H*(C({l})) dims {d:?}\n");
        }
        for n in &self.notes {
            out += &format!("  note: {n}\n");
        }
        for c in &self.checks {
            out += &format!(
                "{:<4} {:<11} {:<16} expected {:<28} computed {}\n",
                if c.pass { "ok" } else { "FAIL" },
                c.section.to_string(),
                c.label,
                c.expected,
                c.computed
            );
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Debug control: negate every computed bracket.
    pub flip_bracket_sign: bool,
    /// Build `Θ` through degree 8 and check `Δ̂₁(v²)`.
    pub with_v_squared: bool,
    /// Highest degree for the dimension ledger.
    pub max_dim_degree: usize,
}

impl VerifyOptions {
    pub fn full() -> Self {
        VerifyOptions { flip_bracket_sign: false, with_v_squared: true, max_dim_degree: 4 }
    }
}

/// `dim H^n` for `n ≤ max_degree` on the Hochschild complex and on each
/// centralizer complex, all by elimination.
pub fn dimension_ledger(dec: &Decomposition, max_degree: usize) -> Result<(Vec<usize>, Vec<(String, Vec<usize>)>)> {
    let caps = DegreeCaps::from_env()?;
    let hh = (0..=max_degree).map(|n| dec.hochschild().cohomology_dim(n, &caps)).collect::<Result<Vec<_>>>()?;
    let mut comps = Vec::new();
    for &x in dec.reps() {
        let cx = dec.component_complex(x)?;
        let dims = (0..=max_degree).map(|n| cx.cohomology_dim(n, &caps)).collect::<Result<Vec<_>>>()?;
        comps.push((dec.group().label(x), dims));
    }
    Ok((hh, comps))
}

/// Named classes of `HH*(F₃S₃)` in the decomposed picture.
pub struct S3Classes {
    pub id: ClassIdentifier,
    pub rep_a: usize,
    pub rep_b: usize,
    pub u: DecomposedClassFamily,
    pub v: DecomposedClassFamily,
    pub c1: DecomposedClassFamily,
    pub c2: DecomposedClassFamily,
    pub x1: DecomposedClassFamily,
    pub x2: DecomposedClassFamily,
}

impl S3Classes {
    /// `u`, `v` are `ε₁` on `P₃`, `P₄` pulled back along `Θ`; `X₁`, `X₂`
    /// are `ε` on the cyclic minimal resolution pulled back along `Ψ`;
    /// `C₁ = 1+a+a²` and `C₂ = b(1+a+a²)` are central elements.
    pub fn new(theta_degree: usize) -> Result<Self> {
        let g = Arc::new(FiniteGroup::s3());
        let id = ClassIdentifier::new(g.clone(), Fp::new(3)?, 9, theta_degree.max(4))?;
        let a = g.parse_element("a").expect("label");
        let b = g.parse_element("b").expect("label");
        let dec = id.decomposition();
        let rep_a = dec.reps()[dec.class_position(a)];
        let rep_b = dec.reps()[dec.class_position(b)];
        let one = dec.reps()[dec.class_position(0)];
        let u = id.representative(one, 3, vec![1])?;
        let v = id.representative(one, 4, vec![1])?;
        let x1 = id.representative(rep_a, 1, vec![1])?;
        let x2 = id.representative(rep_a, 2, vec![1])?;
        let hh0 = |terms: &[usize]| -> Result<DecomposedClassFamily> {
            let k = dec.hochschild().algebra();
            let central = k.from_terms(&terms.iter().map(|&t| (1, t)).collect::<Vec<_>>());
            let phi = dec.hochschild().cochain(0, central)?;
            Ok(DecomposedClassFamily::from_hochschild(dec, &phi)?.normalized())
        };
        let a2 = g.mul(a, a);
        let c1 = hh0(&[0, a, a2])?;
        let c2 = hh0(&[b, g.mul(a, b), g.mul(a2, b)])?;
        Ok(S3Classes { id, rep_a, rep_b, u, v, c1, c2, x1, x2 })
    }

    pub fn generators(&self) -> Vec<(&'static str, &DecomposedClassFamily)> {
        vec![("u", &self.u), ("v", &self.v), ("C1", &self.c1), ("C2", &self.c2), ("X1", &self.x1), ("X2", &self.x2)]
    }

    fn by_name(&self, name: &str) -> &DecomposedClassFamily {
        self.generators().into_iter().find(|(n, _)| *n == name).map(|(_, f)| f).expect("generator name")
    }

    fn model(&self) -> DecomposedModel<'_> {
        DecomposedModel::new(self.id.decomposition())
    }

    /// Class of a signed product of generators, e.g. `"-X1*X2"`, or `"0"`
    /// in a given degree.
    fn named(&self, expr: &str, degree: usize) -> Result<ClassCoordinates> {
        let m = self.model();
        let f = m.field();
        if expr == "0" {
            return self.id.identify(&DecomposedClassFamily::zero(degree));
        }
        let (neg, body) = match expr.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, expr),
        };
        let mut acc: Option<DecomposedClassFamily> = None;
        for name in body.split('*') {
            let g = self.by_name(name).clone();
            acc = Some(match acc {
                None => g,
                Some(x) => m.cup(&x, &g)?,
            });
        }
        let mut fam = acc.expect("nonempty product");
        if neg {
            fam = fam.scale(f.p() - 1);
        }
        if fam.degree != degree {
            return Err(Error::DegreeMismatch { expected: degree, found: fam.degree });
        }
        self.id.identify(&fam)
    }

    fn describe(&self, c: &ClassCoordinates) -> String {
        if c.is_zero() {
            return format!("0 ({c})");
        }
        const NAMES: [&str; 10] = ["u", "v", "C1", "C2", "X1", "X2", "X1*X2", "X2*X2", "u*X2", "v*X2"];
        for name in NAMES {
            for sign in ["", "-"] {
                let e = format!("{sign}{name}");
                if self.named(&e, c.degree).ok().as_ref() == Some(c) {
                    return format!("{e} ({c})");
                }
            }
        }
        c.to_string()
    }
}

const BRACKETS: &[(&str, &str, &str)] = &[
    ("u", "u", "0"),
    ("u", "v", "0"),
    ("v", "u", "0"),
    ("u", "C1", "X2"),
    ("C1", "u", "-X2"),
    ("u", "C2", "0"),
    ("C2", "u", "0"),
    ("u", "X1", "u"),
    ("X1", "u", "-u"),
    ("u", "X2", "0"),
    ("X2", "u", "0"),
    ("v", "v", "0"),
    ("v", "C1", "0"),
    ("C1", "v", "0"),
    ("v", "C2", "0"),
    ("C2", "v", "0"),
    ("v", "X1", "-v"),
    ("X1", "v", "v"),
    ("v", "X2", "0"),
    ("X2", "v", "0"),
    ("C1", "C1", "0"),
    ("C1", "C2", "0"),
    ("C2", "C1", "0"),
    ("C2", "C2", "0"),
    ("C1", "X1", "C1"),
    ("X1", "C1", "-C1"),
    ("C1", "X2", "0"),
    ("X2", "C1", "0"),
    ("C2", "X1", "C2"),
    ("X1", "C2", "-C2"),
    ("C2", "X2", "0"),
    ("X2", "C2", "0"),
    ("X1", "X1", "0"),
    ("X1", "X2", "0"),
    ("X2", "X1", "0"),
    ("X2", "X2", "0"),
];

const RELATIONS: &[(&str, &str)] = &[
    ("u*X1", "0"),
    ("v*X1", "u*X2"),
    ("u*C2", "0"),
    ("v*C2", "0"),
    ("C1*X1", "0"),
    ("C1*X2", "0"),
    ("C2*X1", "0"),
    ("C2*X2", "0"),
    ("C1*C1", "0"),
    ("C1*C2", "0"),
    ("C2*C1", "0"),
    ("C2*C2", "0"),
    ("X1*X2", "u*C1"),
    ("X2*X2", "v*C1"),
];

fn degree_of(name: &str) -> usize {
    match name {
        "u" => 3,
        "v" => 4,
        "X1" => 1,
        "X2" => 2,
        _ => 0,
    }
}

fn product_degree(expr: &str) -> usize {
    expr.trim_start_matches('-').split('*').map(degree_of).sum()
}

/// Runs the worked example. At primes other than 3 only the dimension
/// ledger is checked.
pub fn verify_s3(prime: u32, opts: VerifyOptions) -> Result<Report> {
    let field = Fp::new(prime)?;
    let g = Arc::new(FiniteGroup::s3());
    let dec = Decomposition::new(g, field);
    let (hh, comps) = dimension_ledger(&dec, opts.max_dim_degree)?;
    let mut checks = Vec::new();
    let mut notes = Vec::new();
    let summed: Vec<usize> = (0..hh.len()).map(|n| comps.iter().map(|(_, d)| d[n]).sum()).collect();
    checks.push(Check {
        section: Section::Dimensions,
        label: "HH = sum H(C)".into(),
        expected: format!("{summed:?}"),
        computed: format!("{hh:?}"),
        pass: hh == summed,
    });
    if prime == 3 {
        let expect = [3, 1, 1, 2, 2];
        let n = hh.len().min(expect.len());
        checks.push(Check {
            section: Section::Dimensions,
            label: "HH dims".into(),
            expected: format!("{:?}", &expect[..n]),
            computed: format!("{:?}", &hh[..n]),
            pass: hh[..n] == expect[..n],
        });
    } else {
        if 6 % prime != 0 {
            notes.push(format!("{prime} does not divide 6: the group algebra is semisimple and HH is the centre"));
        }
        notes.push("bracket and relation tables are only checked at p = 3".into());
        return Ok(Report { prime, hochschild_dims: hh, component_dims: comps, notes, checks });
    }

    let cls = S3Classes::new(if opts.with_v_squared { 8 } else { 4 })?;
    let id = &cls.id;
    let m = cls.model();
    let f = m.field();
    let d = id.decomposition();
    let one = d.reps()[0];

    let mut push = |section, label: String, expected: String, computed: String, pass| {
        checks.push(Check { section, label, expected, computed, pass });
    };

    // Δ̂ values
    let dh = |fam: &DecomposedClassFamily, x: usize| -> Result<DecomposedClassFamily> {
        let c = fam.get(x).cloned().map_or_else(|| d.component_zero(x, fam.degree), Ok)?;
        Ok(DecomposedClassFamily::single(delta_hat(d, &c)?.expect("positive degree")))
    };
    let tcup = |a: &DecomposedClassFamily, b: &DecomposedClassFamily, x: usize| -> Result<DecomposedClassFamily> {
        let p = cup(&a.get(x).expect("component").inner, &b.get(x).expect("component").inner)?;
        Ok(DecomposedClassFamily::single(d.component(x, p)?))
    };
    let minus_one_a = id.constant(cls.rep_a, f.p() - 1)?;
    let w1w2 = tcup(&cls.x1, &cls.x2, cls.rep_a)?;
    let w2w2 = tcup(&cls.x2, &cls.x2, cls.rep_a)?;
    let mut dh_rows: Vec<(String, DecomposedClassFamily, ClassCoordinates)> = vec![
        ("Δa(w1)".into(), dh(&cls.x1, cls.rep_a)?, id.identify(&minus_one_a)?),
        ("Δa(w2)".into(), dh(&cls.x2, cls.rep_a)?, id.identify(&DecomposedClassFamily::zero(1))?),
        ("Δa(w1w2)".into(), dh(&w1w2, cls.rep_a)?, id.identify(&cls.x2.scale(f.p() - 1))?),
        ("Δa(w2^2)".into(), dh(&w2w2, cls.rep_a)?, id.identify(&DecomposedClassFamily::zero(3))?),
        ("Δ1(u)".into(), dh(&cls.u, one)?, id.identify(&DecomposedClassFamily::zero(2))?),
        ("Δ1(v)".into(), dh(&cls.v, one)?, id.identify(&DecomposedClassFamily::zero(3))?),
    ];
    if opts.with_v_squared {
        let v2_form = id.representative(one, 8, vec![1])?;
        let v2_cup = tcup(&cls.v, &cls.v, one)?;
        let c_form = id.identify(&v2_form)?;
        let c_cup = id.identify(&v2_cup)?;
        let pm_one = c_cup.components[0].1.len() == 1 && c_cup.components[0].1[0] != 0;
        push(
            Section::DeltaHat,
            "v^2 on P8".into(),
            "±ε₁".into(),
            format!("{c_cup}"),
            pm_one && c_cup.components.iter().skip(1).all(|(_, v)| v.iter().all(|&x| x == 0)) && !c_form.is_zero(),
        );
        dh_rows.push(("Δ1(v^2)".into(), dh(&v2_form, one)?, id.identify(&DecomposedClassFamily::zero(7))?));
        dh_rows.push(("Δ1(v·v)".into(), dh(&v2_cup, one)?, id.identify(&DecomposedClassFamily::zero(7))?));
    }
    for (label, value, expected) in dh_rows {
        let got = id.identify(&value)?;
        let pass = got == expected;
        push(Section::DeltaHat, label, cls.describe(&expected), cls.describe(&got), pass);
    }

    // brackets
    for &(x, y, expect) in BRACKETS {
        let (a, b) = (cls.by_name(x), cls.by_name(y));
        let label = format!("[{x},{y}]");
        match bracket_via_bv(&m, a, b)? {
            None => push(Section::Brackets, label, expect.into(), "0 (degree -1)".into(), expect == "0"),
            Some(mut br) => {
                if opts.flip_bracket_sign {
                    br = br.scale(f.p() - 1);
                }
                let got = id.identify(&br)?;
                let want = cls.named(expect, br.degree)?;
                push(Section::Brackets, label, cls.describe(&want), cls.describe(&got), got == want);
            }
        }
    }

    // ring relations and graded commutativity
    for &(lhs, rhs) in RELATIONS {
        let deg = product_degree(lhs);
        let l = cls.named(lhs, deg)?;
        let r = cls.named(rhs, deg)?;
        push(Section::Relations, format!("{lhs} = {rhs}"), r.to_string(), l.to_string(), l == r);
    }
    let gens = cls.generators();
    for (i, (na, a)) in gens.iter().enumerate() {
        for (nb, b) in gens.iter().skip(i + 1) {
            let ab = id.identify(&m.cup(a, b)?)?;
            let ba = id.identify(&m.signed(a.degree * b.degree, &m.cup(b, a)?))?;
            push(Section::Relations, format!("{na}{nb} = ±{nb}{na}"), ba.to_string(), ab.to_string(), ab == ba);
        }
    }

    Ok(Report { prime, hochschild_dims: hh, component_dims: comps, notes, checks })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_coordinates() {
        let cls = S3Classes::new(4).unwrap();
        let id = &cls.id;
        let u = id.identify(&cls.u).unwrap();
        assert_eq!(u.components[0].1, vec![1]);
        assert!(u.components[1..].iter().all(|(_, v)| v.iter().all(|&c| c == 0)));
        let c1 = id.identify(&cls.c1).unwrap();
        assert_eq!(c1.components.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>(), vec![vec![1], vec![1], vec![0]]);
        let x1 = id.identify(&cls.x1).unwrap();
        assert_eq!(x1.components[1].1, vec![1]);
    }

    #[test]
    fn delta_hat_a_on_w1() {
        let cls = S3Classes::new(4).unwrap();
        let d = cls.id.decomposition();
        let r = delta_hat(d, cls.x1.get(cls.rep_a).unwrap()).unwrap().unwrap();
        assert_eq!(r.inner.values(), &[2]);
    }

    #[test]
    fn non_modular_prime_has_only_dimensions() {
        let r = verify_s3(5, VerifyOptions { max_dim_degree: 2, ..Default::default() }).unwrap();
        assert_eq!(r.hochschild_dims, vec![3, 0, 0]);
        assert!(r.passed());
        assert!(r.section(Section::Brackets).next().is_none());
    }
}
