//! Finite groups given by Cayley tables, conjugacy data and the coset walk.
//!
//! Elements are indices `0..order` with `0` the identity. For a class
//! representative `x` we fix right coset representatives `γ_1 = 1, γ_2, ...`
//! of the centralizer, so that `G` is the disjoint union of `C_G(x)·γ_i` and
//! the class of `x` is `x_i = γ_i⁻¹ x γ_i`. The walk rewrites `γ_i·g` as
//! `h·γ_s` with `h` in the centralizer; every decomposition formula is built
//! from it.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub const DEFAULT_ORDER_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mult: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a Cayley table whose row and column 0 belong to the identity.
    pub fn from_cayley_table(name: &str, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NonGroup {
                reason: "empty table".into(),
                witness: vec![],
            });
        }
        if n > DEFAULT_ORDER_CAP {
            return Err(Error::TooLarge {
                cap: DEFAULT_ORDER_CAP,
            });
        }
        let mut mult = Vec::with_capacity(n * n);
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NonGroup {
                    reason: format!("row {a} has length {}", row.len()),
                    witness: vec![a],
                });
            }
            for (b, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::NonGroup {
                        reason: "entry out of range".into(),
                        witness: vec![a, b, c],
                    });
                }
                mult.push(c);
            }
        }
        for g in 0..n {
            if mult[g] != g || mult[g * n] != g {
                return Err(Error::NonGroup {
                    reason: "element 0 is not the identity".into(),
                    witness: vec![0, g],
                });
            }
        }
        let mut inv = vec![usize::MAX; n];
        for g in 0..n {
            match (0..n).find(|&h| mult[g * n + h] == 0) {
                Some(h) if mult[h * n + g] == 0 => inv[g] = h,
                _ => {
                    return Err(Error::NonGroup {
                        reason: "missing two-sided inverse".into(),
                        witness: vec![g],
                    })
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mult[a * n + b];
                for c in 0..n {
                    if mult[ab * n + c] != mult[a * n + mult[b * n + c]] {
                        return Err(Error::NonGroup {
                            reason: "not associative".into(),
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            order: n,
            mult,
            inv,
            labels: None,
        })
    }

    /// Closure of permutations of `0..degree`, where `perm[i]` is the image of
    /// `i` and `(gh)(i) = g(h(i))`. Elements are numbered in breadth-first
    /// discovery order, multiplying on the right by the generators in order.
    pub fn from_permutations(
        name: &str,
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return Err(Error::NonGroup {
                    reason: format!("{g:?} is not a permutation of 0..{degree}"),
                    witness: vec![],
                });
            }
        }
        let compose = |g: &[usize], h: &[usize]| -> Vec<usize> { h.iter().map(|&i| g[i]).collect() };
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut next = 0;
        while next < elements.len() {
            for gen in generators {
                let prod = compose(&elements[next], gen);
                if !index.contains_key(&prod) {
                    if elements.len() == cap {
                        return Err(Error::TooLarge { cap });
                    }
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                }
            }
            next += 1;
        }
        let n = elements.len();
        let mut mult = Vec::with_capacity(n * n);
        let mut inv = vec![0; n];
        for (a, pa) in elements.iter().enumerate() {
            for pb in &elements {
                let c = index[&compose(pa, pb)];
                if c == 0 {
                    inv[a] = mult.len() % n;
                }
                mult.push(c);
            }
        }
        Ok(FiniteGroup {
            name: name.to_string(),
            order: n,
            mult,
            inv,
            labels: None,
        })
    }

    /// Cyclic group `C_m` with element `k` standing for `a^k`.
    pub fn cyclic(m: usize) -> Self {
        assert!(m >= 1);
        let table: Vec<Vec<usize>> = (0..m).map(|i| (0..m).map(|j| (i + j) % m).collect()).collect();
        let labels = (0..m)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "a".to_string(),
                _ => format!("a{k}"),
            })
            .collect();
        Self::from_cayley_table(&format!("C{m}"), &table)
            .expect("cyclic table is a group")
            .with_labels(labels)
            .expect("label count matches")
    }

    /// `S_3` with elements ordered `1, a, a², b, ab, a²b` (index `i + 3j` is
    /// `a^i b^j`), `a` a 3-cycle and `b` a transposition with `bab = a⁻¹`.
    pub fn s3() -> Self {
        let table: Vec<Vec<usize>> = (0..6)
            .map(|x| {
                let (i, j) = (x % 3, x / 3);
                (0..6)
                    .map(|y| {
                        let (k, l) = (y % 3, y / 3);
                        let e = if j == 0 { i + k } else { i + 3 - k };
                        e % 3 + 3 * ((j + l) % 2)
                    })
                    .collect()
            })
            .collect();
        let labels = ["1", "a", "a2", "b", "ab", "a2b"].iter().map(|s| s.to_string()).collect();
        Self::from_cayley_table("S3", &table)
            .expect("S3 table is a group")
            .with_labels(labels)
            .expect("six labels")
    }

    /// One of the built-in fixtures `C2`, `C3`, `C4`, `S3`.
    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "C2" => Some(Self::cyclic(2)),
            "C3" => Some(Self::cyclic(3)),
            "C4" => Some(Self::cyclic(4)),
            "S3" => Some(Self::s3()),
            _ => None,
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order {
            return Err(Error::DimensionMismatch {
                expected: self.order,
                found: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    /// Element with the given label, or a plain index.
    pub fn parse_element(&self, s: &str) -> Option<usize> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|x| x == s) {
                return Some(i);
            }
        }
        s.parse().ok().filter(|&i| i < self.order)
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn product(&self, gs: &[usize]) -> usize {
        gs.iter().fold(0, |acc, &g| self.mul(acc, g))
    }

    /// `g⁻¹ x g`.
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.inv[g], self.mul(x, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut y = g;
        while y != 0 {
            y = self.mul(y, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn centralizer(&self, x: usize) -> Vec<usize> {
        (0..self.order).filter(|&g| self.mul(g, x) == self.mul(x, g)).collect()
    }

    pub fn mult_table(&self) -> Vec<Vec<usize>> {
        self.mult.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// The subgroup on a sorted element list, as a group in its own right.
    pub fn subgroup(&self, name: &str, elements: &[usize]) -> Result<Subgroup> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(Error::NonGroup {
                reason: "subgroup must contain the identity".into(),
                witness: vec![],
            });
        }
        let mut to_local = vec![None; self.order];
        for (i, &g) in elements.iter().enumerate() {
            to_local[g] = Some(i);
        }
        let mut table = Vec::with_capacity(elements.len());
        for &a in &elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in &elements {
                match to_local[self.mul(a, b)] {
                    Some(c) => row.push(c),
                    None => {
                        return Err(Error::NonGroup {
                            reason: "subgroup is not closed".into(),
                            witness: vec![a, b],
                        })
                    }
                }
            }
            table.push(row);
        }
        let mut group = Self::from_cayley_table(name, &table)?;
        if let Some(l) = &self.labels {
            group.labels = Some(elements.iter().map(|&g| l[g].clone()).collect());
        }
        Ok(Subgroup {
            group,
            elements,
            to_local,
        })
    }
}

/// A subgroup `H ≤ G` carried as its own group (local indices follow the
/// sorted ambient element list) together with the embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    group: FiniteGroup,
    elements: Vec<usize>,
    to_local: Vec<Option<usize>>,
}

impl Subgroup {
    pub fn whole(g: &FiniteGroup) -> Self {
        let elements: Vec<usize> = (0..g.order()).collect();
        Subgroup {
            group: g.clone(),
            to_local: elements.iter().map(|&i| Some(i)).collect(),
            elements,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Ambient indices of the elements, sorted.
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn ambient_order(&self) -> usize {
        self.to_local.len()
    }

    #[inline]
    pub fn to_ambient(&self, local: usize) -> usize {
        self.elements[local]
    }

    #[inline]
    pub fn to_local(&self, ambient: usize) -> Option<usize> {
        self.to_local[ambient]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyData {
    pub reps: Vec<usize>,
    /// `classes[r] = (x_1, ..., x_{n_x})` with `x_1 = x`.
    pub classes: Vec<Vec<usize>>,
    pub centralizers: Vec<Vec<usize>>,
    /// `gammas[r] = (γ_1, ..., γ_{n_x})` with `γ_1 = 1`.
    pub gammas: Vec<Vec<usize>>,
    /// `coset_index[r][g] = i` (0-based) when `g ∈ C_G(x)·γ_i`.
    coset_index: Vec<Vec<usize>>,
    group: FiniteGroup,
}

impl ConjugacyData {
    pub fn new(group: &FiniteGroup) -> Self {
        let n = group.order();
        let mut class_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        let mut classes = Vec::new();
        let mut centralizers = Vec::new();
        let mut gammas = Vec::new();
        let mut coset_index = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let r = reps.len();
            let cent = group.centralizer(x);
            let mut cosets = vec![usize::MAX; n];
            let mut gam = Vec::new();
            let mut cls = Vec::new();
            for g in 0..n {
                if cosets[g] != usize::MAX {
                    continue;
                }
                let i = gam.len();
                for &c in &cent {
                    cosets[group.mul(c, g)] = i;
                }
                gam.push(g);
                let xi = group.conjugate(x, g);
                class_of[xi] = r;
                cls.push(xi);
            }
            reps.push(x);
            classes.push(cls);
            centralizers.push(cent);
            gammas.push(gam);
            coset_index.push(cosets);
        }
        ConjugacyData {
            reps,
            classes,
            centralizers,
            gammas,
            coset_index,
            group: group.clone(),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    /// Position of a representative in `reps`.
    pub fn rep_position(&self, x: usize) -> Result<usize> {
        self.reps.iter().position(|&r| r == x).ok_or(Error::NotARepresentative(x))
    }

    /// Representative of the class containing `g`.
    pub fn class_rep(&self, g: usize) -> usize {
        let r = self
            .classes
            .iter()
            .position(|c| c.contains(&g))
            .expect("classes partition the group");
        self.reps[r]
    }

    pub fn class_size(&self, r: usize) -> usize {
        self.classes[r].len()
    }

    /// `γ_i·g = h·γ_s` for the representative at position `r`; `i`, `s` are
    /// 0-based here.
    #[inline]
    pub fn coset_walk(&self, r: usize, i: usize, g: usize) -> (usize, usize) {
        let y = self.group.mul(self.gammas[r][i], g);
        let s = self.coset_index[r][y];
        let h = self.group.mul(y, self.group.inv(self.gammas[r][s]));
        (h, s)
    }

    /// Iterated walk over `gs` starting from coset `i`; the `h`'s may be the
    /// identity.
    pub fn walk_sequence(&self, r: usize, i: usize, gs: &[usize]) -> (Vec<usize>, usize) {
        let mut s = i;
        let mut hs = Vec::with_capacity(gs.len());
        for &g in gs {
            let (h, t) = self.coset_walk(r, s, g);
            hs.push(h);
            s = t;
        }
        (hs, s)
    }

    /// Allocation-free form of [`walk_sequence`](Self::walk_sequence) writing into `out`.
    #[inline]
    pub fn walk_into(&self, r: usize, i: usize, gs: &[usize], out: &mut [usize]) -> usize {
        let mut s = i;
        for (k, &g) in gs.iter().enumerate() {
            let (h, t) = self.coset_walk(r, s, g);
            out[k] = h;
            s = t;
        }
        s
    }

    /// Centralizer of the representative at position `r` as a subgroup.
    pub fn centralizer_subgroup(&self, r: usize) -> Subgroup {
        let name = format!("C_{}({})", self.group.name(), self.group.label(self.reps[r]));
        self.group
            .subgroup(&name, &self.centralizers[r])
            .expect("centralizers are subgroups")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3_labels(g: &FiniteGroup) -> impl Fn(&str) -> usize + '_ {
        move |s| g.parse_element(s).unwrap()
    }

    #[test]
    fn small_tables() {
        let c2 = FiniteGroup::from_cayley_table("C2", &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c2.inv, vec![0, 1]);
        let c3 = FiniteGroup::from_cayley_table("C3", &[vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]]).unwrap();
        assert_eq!(c3.inv, vec![0, 2, 1]);
    }

    #[test]
    fn rejects_broken_tables() {
        let bad = vec![vec![0, 1, 2], vec![1, 0, 2], vec![2, 2, 0]];
        assert!(matches!(FiniteGroup::from_cayley_table("x", &bad), Err(Error::NonGroup { .. })));
        let not_assoc = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        match FiniteGroup::from_cayley_table("x", &not_assoc) {
            Err(Error::NonGroup { reason, witness }) => {
                assert_eq!(reason, "not associative");
                assert_eq!(witness.len(), 3);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn permutation_closure() {
        let s3 = FiniteGroup::from_permutations("S3", 3, &[vec![1, 2, 0], vec![1, 0, 2]], 100).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(FiniteGroup::from_permutations("C2", 2, &[vec![1, 0]], 100).unwrap().order(), 2);
        assert_eq!(FiniteGroup::from_permutations("1", 4, &[], 100).unwrap().order(), 1);
        assert!(matches!(
            FiniteGroup::from_permutations("S4", 4, &[vec![1, 2, 3, 0], vec![1, 0, 2, 3]], 10),
            Err(Error::TooLarge { cap: 10 })
        ));
    }

    #[test]
    fn s3_fixture_relations() {
        let g = FiniteGroup::s3();
        let e = s3_labels(&g);
        let (a, b) = (e("a"), e("b"));
        assert_eq!(g.element_order(a), 3);
        assert_eq!(g.element_order(b), 2);
        assert_eq!(g.product(&[b, a, b]), e("a2"));
        assert_eq!(g.mul(a, b), e("ab"));
        assert_eq!(g.mul(e("a2"), b), e("a2b"));
    }

    #[test]
    fn s3_conjugacy_data() {
        let g = FiniteGroup::s3();
        let e = s3_labels(&g);
        let cd = ConjugacyData::new(&g);
        assert_eq!(cd.reps, vec![0, e("a"), e("b")]);
        assert_eq!(cd.centralizers[1], vec![0, e("a"), e("a2")]);
        assert_eq!(cd.centralizers[2], vec![0, e("b")]);
        assert_eq!(cd.gammas[1], vec![0, e("b")]);
        assert_eq!(cd.classes[1], vec![e("a"), e("a2")]);
        assert_eq!(cd.classes[2], vec![e("b"), e("ab"), e("a2b")]);
        for r in 0..3 {
            let x = cd.reps[r];
            for (i, &gam) in cd.gammas[r].iter().enumerate() {
                assert_eq!(cd.classes[r][i], g.conjugate(x, gam));
            }
            assert_eq!(cd.class_size(r) * cd.centralizers[r].len(), 6);
        }
    }

    #[test]
    fn s3_walks() {
        let g = FiniteGroup::s3();
        let e = s3_labels(&g);
        let cd = ConjugacyData::new(&g);
        assert_eq!(cd.coset_walk(1, 0, e("a")), (e("a"), 0));
        assert_eq!(cd.coset_walk(1, 1, e("a")), (e("a2"), 1));
        assert_eq!(cd.coset_walk(1, 1, 0), (0, 1));
        assert_eq!(cd.walk_sequence(1, 0, &[e("b"), e("b")]), (vec![0, 0], 0));
        assert_eq!(cd.walk_sequence(1, 0, &[e("a"), e("a")]), (vec![e("a"), e("a")], 0));
        assert_eq!(cd.walk_sequence(1, 0, &[]), (vec![], 0));
    }

    #[test]
    fn abelian_classes_are_singletons() {
        for m in 1..6 {
            let g = FiniteGroup::cyclic(m);
            let cd = ConjugacyData::new(&g);
            assert_eq!(cd.reps, (0..m).collect::<Vec<_>>());
            assert!(cd.gammas.iter().all(|gs| gs == &vec![0]));
        }
    }

    #[test]
    fn walk_properties_exhaustive() {
        for g in [FiniteGroup::s3(), FiniteGroup::cyclic(4)] {
            let cd = ConjugacyData::new(&g);
            for r in 0..cd.reps.len() {
                let nx = cd.gammas[r].len();
                let cent = &cd.centralizers[r];
                for x in 0..g.order() {
                    let mut targets: Vec<usize> = (0..nx).map(|i| cd.coset_walk(r, i, x).1).collect();
                    targets.sort_unstable();
                    assert_eq!(targets, (0..nx).collect::<Vec<_>>());
                    for i in 0..nx {
                        let (h, s) = cd.coset_walk(r, i, x);
                        assert!(cent.contains(&h));
                        assert_eq!(cd.coset_walk(r, s, g.inv(x)), (g.inv(h), i));
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_embedding() {
        let g = FiniteGroup::s3();
        let cd = ConjugacyData::new(&g);
        let h = cd.centralizer_subgroup(1);
        assert_eq!(h.group().order(), 3);
        assert_eq!(h.group().label(2), "a2");
        assert!(g.subgroup("bad", &[0, 1]).is_err());
    }
}
