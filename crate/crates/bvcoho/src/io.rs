//! JSON forms of groups and cochains.
//!
//! Cochain tuples are written with ambient group indices; only nonzero
//! entries are listed, in tuple-index order, so writing a cochain read from
//! a file reproduces the file byte for byte.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::complexes::{Cochain, Complex, ComplexKind};
use crate::decomposition::{ComponentCochain, Decomposition};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};

fn parse_err(what: &str, e: serde_json::Error) -> Error {
    Error::Parse(format!("{what}: line {} column {}: {e}", e.line(), e.column()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupFile {
    Table {
        name: String,
        order: usize,
        mult: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Permutations {
        #[serde(default)]
        name: Option<String>,
        degree: usize,
        generators: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self> {
        // parse to a value first so syntax errors keep their position
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| parse_err("group file", e))?;
        serde_json::from_value(v).map_err(|e| Error::Parse(format!("group file: expected {{name, order, mult}} or {{degree, generators}}: {e}")))
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let (g, labels) = match self {
            GroupFile::Table { name, order, mult, labels } => {
                if mult.len() != *order {
                    return Err(Error::DimensionMismatch { expected: *order, found: mult.len() });
                }
                (FiniteGroup::from_cayley_table(name, mult)?, labels)
            }
            GroupFile::Permutations { name, degree, generators, labels } => {
                let name = name.as_deref().unwrap_or("perm");
                (FiniteGroup::from_permutations(name, *degree, generators, DEFAULT_ORDER_CAP)?, labels)
            }
        };
        match labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }

    pub fn from_group(g: &FiniteGroup) -> Self {
        GroupFile::Table {
            name: g.name().to_string(),
            order: g.order(),
            mult: g.mult_table(),
            labels: g.labels().map(<[String]>::to_vec),
        }
    }
}

/// A built-in name (`C2`, `C3`, `C4`, `S3`) or a path to a group file.
pub fn load_group(spec: &str) -> Result<FiniteGroup> {
    if let Some(g) = FiniteGroup::builtin(spec) {
        return Ok(g);
    }
    let text = std::fs::read_to_string(spec).map_err(|e| Error::Parse(format!("{spec}: {e}")))?;
    GroupFile::from_json(&text)?.build()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Scalar(u32),
    Vector(Vec<u32>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainFile {
    pub prime: u32,
    pub group: String,
    /// `hochschild`, `conjugation`, `trivial` or `component`.
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rep: Option<usize>,
    pub degree: usize,
    pub values: Vec<(Vec<usize>, Value)>,
}

fn kind_name(kind: &ComplexKind) -> &'static str {
    match kind {
        ComplexKind::HochschildKG => "hochschild",
        ComplexKind::GroupConjugation => "conjugation",
        ComplexKind::GroupTrivial(_) => "trivial",
    }
}

impl CochainFile {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err("cochain file", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Trivial-kind cochains on a proper subgroup lose their subgroup here;
    /// use [`CochainFile::from_component`] for centralizer cochains.
    pub fn from_cochain(c: &Cochain) -> Self {
        let cx = c.complex();
        let to_ambient = |t: Vec<usize>| -> Vec<usize> {
            match cx.kind() {
                ComplexKind::GroupTrivial(h) => t.into_iter().map(|g| h.to_ambient(g)).collect(),
                _ => t,
            }
        };
        let values = c
            .iter()
            .filter(|(_, v)| v.iter().any(|&x| x != 0))
            .map(|(t, v)| {
                let value = if v.len() == 1 { Value::Scalar(v[0]) } else { Value::Vector(v.to_vec()) };
                (to_ambient(t), value)
            })
            .collect();
        CochainFile {
            prime: c.field().p(),
            group: cx.group().name().to_string(),
            kind: kind_name(cx.kind()).into(),
            rep: None,
            degree: c.degree(),
            values,
        }
    }

    pub fn from_component(c: &ComponentCochain) -> Self {
        CochainFile { kind: "component".into(), rep: Some(c.rep), ..Self::from_cochain(&c.inner) }
    }

    /// Reads the values into a cochain of `complex`, checking prime, kind and
    /// every tuple.
    pub fn to_cochain(&self, complex: &Arc<Complex>) -> Result<Cochain> {
        let p = complex.field().p();
        if self.prime != p {
            return Err(Error::KindMismatch(format!("cochain over GF({}) used with GF({p})", self.prime)));
        }
        let want = kind_name(complex.kind());
        if self.kind != want && !(self.kind == "component" && want == "trivial") {
            return Err(Error::KindMismatch(format!("{} cochain where a {want} cochain is needed", self.kind)));
        }
        let local = |g: usize| -> Result<usize> {
            let bad = || Error::Parse(format!("element {g} is not valid in this complex"));
            match complex.kind() {
                ComplexKind::GroupTrivial(h) => h.to_local(g).ok_or_else(bad),
                _ if g < complex.group().order() => Ok(g),
                _ => Err(bad()),
            }
        };
        let mut c = complex.zero(self.degree);
        let w = complex.width();
        for (tuple, value) in &self.values {
            if tuple.len() != self.degree {
                return Err(Error::DimensionMismatch { expected: self.degree, found: tuple.len() });
            }
            let t = tuple.iter().map(|&g| local(g)).collect::<Result<Vec<_>>>()?;
            if t.contains(&0) {
                return Err(Error::Parse(format!("tuple {tuple:?} contains the identity")));
            }
            let v = match value {
                Value::Scalar(x) if w == 1 => vec![*x],
                Value::Vector(v) if v.len() == w => v.clone(),
                _ => return Err(Error::DimensionMismatch { expected: w, found: if let Value::Vector(v) = value { v.len() } else { 1 } }),
            };
            if let Some(x) = v.iter().find(|&&x| x >= p) {
                return Err(Error::Parse(format!("coefficient {x} is not in [0, {p})")));
            }
            c.set(&t, &v);
        }
        Ok(c)
    }

    pub fn to_component(&self, dec: &Decomposition) -> Result<ComponentCochain> {
        let rep = self.rep.ok_or_else(|| Error::Parse("component cochain without \"rep\"".into()))?;
        let cx = dec.component_complex(rep)?;
        dec.component(rep, self.to_cochain(cx)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;

    #[test]
    fn group_file_forms() {
        let t = GroupFile::from_json(r#"{"name": "C3", "order": 3, "mult": [[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap().build().unwrap();
        assert_eq!(t.order(), 3);
        assert_eq!(t.inv(1), 2);
        let p = GroupFile::from_json(r#"{"degree": 3, "generators": [[1,0,2],[1,2,0]]}"#).unwrap().build().unwrap();
        assert_eq!(p.order(), 6);
        assert!(!p.is_abelian());
        let err = GroupFile::from_json("{\n  \"name\": \"x\",\n  \"order\": 2,\n  \"mult\": [[0,1],[1,0]\n}").unwrap_err();
        assert!(err.to_string().contains("line 5"), "{err}");
    }

    #[test]
    fn cochain_round_trip() {
        let g = Arc::new(FiniteGroup::s3());
        let f = Fp::new(3).unwrap();
        let hh = Complex::hochschild(g.clone(), f);
        let c = hh.from_fn(1, |t| (0..6).map(|h| ((t[0] * 7 + h * 5) % 3) as u32).collect());
        let text = CochainFile::from_cochain(&c).to_json();
        let back = CochainFile::from_json(&text).unwrap().to_cochain(&hh).unwrap();
        assert_eq!(back, c);
        assert_eq!(CochainFile::from_cochain(&back).to_json(), text);
    }

    #[test]
    fn component_round_trip() {
        let g = Arc::new(FiniteGroup::s3());
        let dec = Decomposition::new(g, Fp::new(3).unwrap());
        let a = 1;
        let cx = dec.component_complex(a).unwrap();
        let inner = cx.cochain(1, vec![1, 2]).unwrap();
        let comp = dec.component(a, inner).unwrap();
        let file = CochainFile::from_component(&comp);
        assert_eq!(file.values[1].0, vec![2]);
        let text = file.to_json_pretty();
        assert_eq!(CochainFile::from_json(&text).unwrap().to_component(&dec).unwrap(), comp);
    }

    #[test]
    fn rejects_bad_input() {
        let g = Arc::new(FiniteGroup::cyclic(3));
        let tr = Complex::trivial(g, Fp::new(3).unwrap());
        let bad_prime = r#"{"prime": 2, "group": "C3", "kind": "trivial", "degree": 0, "values": []}"#;
        assert!(matches!(CochainFile::from_json(bad_prime).unwrap().to_cochain(&tr), Err(Error::KindMismatch(_))));
        let identity = r#"{"prime": 3, "group": "C3", "kind": "trivial", "degree": 1, "values": [[[0], 1]]}"#;
        assert!(CochainFile::from_json(identity).unwrap().to_cochain(&tr).is_err());
        let big = r#"{"prime": 3, "group": "C3", "kind": "trivial", "degree": 1, "values": [[[1], 3]]}"#;
        assert!(CochainFile::from_json(big).unwrap().to_cochain(&tr).is_err());
    }
}
