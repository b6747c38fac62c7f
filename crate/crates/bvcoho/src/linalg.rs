//! Exact linear algebra over GF(p): rank, kernels, solving and quotient
//! bases of `ker / im`.
//!
//! Everything goes through one row-echelon engine. Rows are inserted in
//! index order and each row is pivoted on its smallest nonzero column, so the
//! reduced echelon form (and hence every kernel basis and quotient
//! representative) is determined by the input alone. Below
//! [`DENSE_THRESHOLD`] columns rows are stored densely.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::field::Fp;

pub const DENSE_THRESHOLD: usize = 256;

const NONE: u32 = u32::MAX;

pub type SparseVec = Vec<(u32, u32)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Fp,
    rows: usize,
    cols: usize,
    /// Sorted by `(row, col)`, no duplicates, no zeros.
    entries: Vec<(usize, usize, u32)>,
}

impl SparseMatrix {
    /// Builds a matrix from triplets; repeated positions are summed and zero
    /// sums dropped.
    pub fn from_triplets(
        field: Fp,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, u32)>,
    ) -> Result<Self> {
        let mut entries: Vec<(usize, usize, u32)> = Vec::new();
        for (r, c, v) in triplets {
            if r >= rows {
                return Err(Error::DimensionMismatch { expected: rows, found: r + 1 });
            }
            if c >= cols {
                return Err(Error::DimensionMismatch { expected: cols, found: c + 1 });
            }
            entries.push((r, c, v % field.p()));
        }
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        let mut merged: Vec<(usize, usize, u32)> = Vec::with_capacity(entries.len());
        for (r, c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == r && last.1 == c => last.2 = field.add(last.2, v),
                _ => merged.push((r, c, v)),
            }
        }
        merged.retain(|e| e.2 != 0);
        Ok(SparseMatrix { field, rows, cols, entries: merged })
    }

    pub fn from_dense(field: Fp, rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut trip = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: row.len() });
            }
            trip.extend(row.iter().enumerate().map(|(j, &v)| (i, j, v)));
        }
        Self::from_triplets(field, rows.len(), cols, trip)
    }

    pub fn zero(field: Fp, rows: usize, cols: usize) -> Self {
        SparseMatrix { field, rows, cols, entries: Vec::new() }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        SparseMatrix { field, rows: n, cols: n, entries: (0..n).map(|i| (i, i, 1)).collect() }
    }

    pub fn field(&self) -> Fp {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[(usize, usize, u32)] {
        &self.entries
    }

    pub fn transpose(&self) -> Self {
        let mut entries: Vec<_> = self.entries.iter().map(|&(r, c, v)| (c, r, v)).collect();
        entries.sort_unstable_by_key(|&(r, c, _)| (r, c));
        SparseMatrix { field: self.field, rows: self.cols, cols: self.rows, entries }
    }

    fn row_lists(&self) -> Vec<SparseVec> {
        let mut out = vec![Vec::new(); self.rows];
        for &(r, c, v) in &self.entries {
            out[r].push((c as u32, v));
        }
        out
    }

    pub fn mul_vec(&self, x: &[u32]) -> Result<Vec<u32>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: x.len() });
        }
        let f = self.field;
        let mut y = vec![0; self.rows];
        for &(r, c, v) in &self.entries {
            y[r] = f.mul_add(y[r], v, x[c]);
        }
        Ok(y)
    }
}

enum Store {
    Sparse(SparseVec),
    Dense(Vec<u32>),
}

/// Row echelon form built by successive insertion; optionally each row
/// carries a tag vector recording how it was combined from tagged inputs.
struct Echelon {
    field: Fp,
    cols: usize,
    dense: bool,
    pivot_of: Vec<u32>,
    leads: Vec<u32>,
    rows: Vec<Store>,
    tags: Vec<SparseVec>,
    tag_dim: usize,
    work: Vec<u32>,
    in_heap: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
    tag_work: Vec<u32>,
    tag_touched: Vec<u32>,
    tag_seen: Vec<bool>,
}

enum Outcome {
    Pivot,
    Dependent,
}

impl Echelon {
    fn new(field: Fp, cols: usize, tag_dim: usize) -> Self {
        Echelon {
            field,
            cols,
            dense: cols < DENSE_THRESHOLD,
            pivot_of: vec![NONE; cols],
            leads: Vec::new(),
            rows: Vec::new(),
            tags: Vec::new(),
            tag_dim,
            work: vec![0; cols],
            in_heap: vec![false; cols],
            heap: BinaryHeap::new(),
            tag_work: vec![0; tag_dim],
            tag_touched: Vec::new(),
            tag_seen: vec![false; tag_dim],
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn load_tag(&mut self, tag: &[(u32, u32)]) {
        for &(i, v) in tag {
            self.add_tag_entry(i, v);
        }
    }

    #[inline]
    fn add_tag_entry(&mut self, i: u32, v: u32) {
        let iu = i as usize;
        self.tag_work[iu] = self.field.add(self.tag_work[iu], v);
        if !self.tag_seen[iu] {
            self.tag_seen[iu] = true;
            self.tag_touched.push(i);
        }
    }

    fn take_tag(&mut self, scale: u32) -> SparseVec {
        self.tag_touched.sort_unstable();
        let mut out = Vec::new();
        for &i in &self.tag_touched {
            let iu = i as usize;
            let v = self.field.mul(self.tag_work[iu], scale);
            if v != 0 {
                out.push((i, v));
            }
            self.tag_work[iu] = 0;
            self.tag_seen[iu] = false;
        }
        self.tag_touched.clear();
        out
    }

    /// Subtracts `factor` times pivot row `k` from the work vector and tag.
    fn eliminate(&mut self, k: usize, factor: u32) {
        let f = self.field;
        let neg = f.neg(factor);
        match &self.rows[k] {
            Store::Sparse(row) => {
                for &(c, v) in row {
                    let cu = c as usize;
                    self.work[cu] = f.mul_add(self.work[cu], neg, v);
                    if !self.in_heap[cu] {
                        self.in_heap[cu] = true;
                        self.heap.push(Reverse(c));
                    }
                }
            }
            Store::Dense(row) => {
                let lead = self.leads[k] as usize;
                for c in lead..self.cols {
                    if row[c] != 0 {
                        self.work[c] = f.mul_add(self.work[c], neg, row[c]);
                    }
                }
            }
        }
        if self.tag_dim > 0 {
            let tag = std::mem::take(&mut self.tags[k]);
            for &(i, v) in &tag {
                self.add_tag_entry(i, f.mul(neg, v));
            }
            self.tags[k] = tag;
        }
    }

    /// Reduces `row` (with `tag`) against the pivots. When `admit` is set a
    /// surviving row becomes a new pivot; otherwise the remainder is
    /// discarded. Returns the outcome and the accumulated tag (for a
    /// dependent row: `tag − Σ cᵢ·tagᵢ` where `row = Σ cᵢ·rowᵢ`).
    fn reduce(&mut self, row: &[(u32, u32)], tag: &[(u32, u32)], admit: bool) -> (Outcome, SparseVec) {
        self.load_tag(tag);
        for &(c, v) in row {
            let cu = c as usize;
            self.work[cu] = self.field.add(self.work[cu], v);
            if !self.dense && !self.in_heap[cu] {
                self.in_heap[cu] = true;
                self.heap.push(Reverse(c));
            }
        }
        let mut lead = None;
        if self.dense {
            for c in 0..self.cols {
                let v = self.work[c];
                if v == 0 {
                    continue;
                }
                let k = self.pivot_of[c];
                if k == NONE {
                    lead = Some(c);
                    break;
                }
                self.eliminate(k as usize, v);
            }
        } else {
            while let Some(Reverse(c)) = self.heap.pop() {
                let cu = c as usize;
                self.in_heap[cu] = false;
                let v = self.work[cu];
                if v == 0 {
                    continue;
                }
                let k = self.pivot_of[cu];
                if k == NONE {
                    lead = Some(cu);
                    break;
                }
                self.eliminate(k as usize, v);
            }
        }
        match lead {
            None => {
                let t = self.take_tag(1);
                (Outcome::Dependent, t)
            }
            Some(c) => {
                let f = self.field;
                let scale = f.inv(self.work[c]);
                let store = if self.dense {
                    let mut r = vec![0; self.cols];
                    for j in c..self.cols {
                        r[j] = f.mul(self.work[j], scale);
                        self.work[j] = 0;
                    }
                    Store::Dense(r)
                } else {
                    let mut cols_left: Vec<u32> = vec![c as u32];
                    while let Some(Reverse(j)) = self.heap.pop() {
                        self.in_heap[j as usize] = false;
                        cols_left.push(j);
                    }
                    cols_left.sort_unstable();
                    let mut r = Vec::with_capacity(cols_left.len());
                    for j in cols_left {
                        let ju = j as usize;
                        let v = self.work[ju];
                        if v != 0 {
                            r.push((j, f.mul(v, scale)));
                        }
                        self.work[ju] = 0;
                    }
                    Store::Sparse(r)
                };
                let t = self.take_tag(scale);
                if admit {
                    self.pivot_of[c] = self.rows.len() as u32;
                    self.leads.push(c as u32);
                    self.rows.push(store);
                    self.tags.push(t);
                    (Outcome::Pivot, Vec::new())
                } else {
                    (Outcome::Pivot, t)
                }
            }
        }
    }

    fn insert(&mut self, row: &[(u32, u32)], tag: &[(u32, u32)]) -> Outcome {
        self.reduce(row, tag, true).0
    }

    /// Reduced rows with leading 1 and zeros in all other pivot columns,
    /// indexed like `leads`.
    fn reduced_rows(&self) -> Vec<SparseVec> {
        let f = self.field;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_unstable_by_key(|&k| Reverse(self.leads[k]));
        let mut out: Vec<SparseVec> = vec![Vec::new(); self.rows.len()];
        let mut work = vec![0u32; self.cols];
        for k in order {
            let lead = self.leads[k] as usize;
            let mut touched: Vec<u32> = Vec::new();
            match &self.rows[k] {
                Store::Sparse(r) => {
                    for &(c, v) in r {
                        work[c as usize] = v;
                        touched.push(c);
                    }
                }
                Store::Dense(r) => {
                    for c in lead..self.cols {
                        if r[c] != 0 {
                            work[c] = r[c];
                            touched.push(c as u32);
                        }
                    }
                }
            }
            let pivot_cols: Vec<u32> = touched
                .iter()
                .copied()
                .filter(|&c| c as usize != lead && self.pivot_of[c as usize] != NONE)
                .collect();
            for c in pivot_cols {
                let v = work[c as usize];
                if v == 0 {
                    continue;
                }
                let j = self.pivot_of[c as usize] as usize;
                let neg = f.neg(v);
                for &(cc, vv) in &out[j] {
                    let ccu = cc as usize;
                    if work[ccu] == 0 && cc != c {
                        touched.push(cc);
                    }
                    work[ccu] = f.mul_add(work[ccu], neg, vv);
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut r = Vec::new();
            for c in touched {
                let cu = c as usize;
                if work[cu] != 0 {
                    r.push((c, work[cu]));
                }
                work[cu] = 0;
            }
            out[k] = r;
        }
        out
    }
}

pub fn rank(m: &SparseMatrix) -> usize {
    let mut e = Echelon::new(m.field, m.cols, 0);
    for row in m.row_lists() {
        if e.rank() == m.cols {
            break;
        }
        e.insert(&row, &[]);
    }
    e.rank()
}

fn kernel_from_echelon(e: &Echelon) -> Vec<Vec<u32>> {
    let f = e.field;
    let reduced = e.reduced_rows();
    let free: Vec<usize> = (0..e.cols).filter(|&c| e.pivot_of[c] == NONE).collect();
    let mut slot = vec![usize::MAX; e.cols];
    for (i, &c) in free.iter().enumerate() {
        slot[c] = i;
    }
    let mut basis: Vec<Vec<u32>> = free
        .iter()
        .map(|&c| {
            let mut v = vec![0; e.cols];
            v[c] = 1;
            v
        })
        .collect();
    for (k, row) in reduced.iter().enumerate() {
        let lead = e.leads[k] as usize;
        for &(c, v) in row {
            let s = slot[c as usize];
            if s != usize::MAX {
                basis[s][lead] = f.neg(v);
            }
        }
    }
    basis
}

/// Basis of the null space `{x : Mx = 0}`, one vector per non-pivot column
/// in increasing order (value 1 there, zero at the other free columns).
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<u32>> {
    let mut e = Echelon::new(m.field, m.cols, 0);
    for row in m.row_lists() {
        if e.rank() == m.cols {
            break;
        }
        e.insert(&row, &[]);
    }
    kernel_from_echelon(&e)
}

/// Some `x` with `Mx = b`, or `None` when the system is inconsistent.
pub fn solve(m: &SparseMatrix, b: &[u32]) -> Result<Option<Vec<u32>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch { expected: m.rows, found: b.len() });
    }
    let f = m.field;
    let mut e = Echelon::new(f, m.rows, m.cols);
    for (j, col) in m.transpose().row_lists().into_iter().enumerate() {
        e.insert(&col, &[(j as u32, 1)]);
    }
    let target: SparseVec = b.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i as u32, v % f.p())).collect();
    match e.reduce(&target, &[], false) {
        (Outcome::Pivot, _) => Ok(None),
        (Outcome::Dependent, tag) => {
            // tag = −Σ cⱼ·eⱼ with b = Σ cⱼ·colⱼ
            let mut x = vec![0; m.cols];
            for (j, v) in tag {
                x[j as usize] = f.neg(v);
            }
            Ok(Some(x))
        }
    }
}

/// `ker(kernel_of) / im(image_of)` with representatives and an exact
/// coordinate map.
pub struct QuotientBasis {
    field: Fp,
    dim_ambient: usize,
    representatives: Vec<Vec<u32>>,
    kernel_dim: usize,
    image_rank: usize,
    echelon: Echelon,
}

impl std::fmt::Debug for QuotientBasis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientBasis")
            .field("dim", &self.representatives.len())
            .field("kernel_dim", &self.kernel_dim)
            .field("image_rank", &self.image_rank)
            .finish()
    }
}

impl QuotientBasis {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.representatives
    }

    pub fn kernel_dim(&self) -> usize {
        self.kernel_dim
    }

    pub fn image_rank(&self) -> usize {
        self.image_rank
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim_ambient
    }

    /// Coordinates of a cocycle modulo the image; `NotACocycle` when `v`
    /// is not in the kernel.
    pub fn reduce(&mut self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.dim_ambient {
            return Err(Error::DimensionMismatch { expected: self.dim_ambient, found: v.len() });
        }
        let f = self.field;
        let row: SparseVec = v.iter().enumerate().filter(|(_, &x)| x % f.p() != 0).map(|(i, &x)| (i as u32, x % f.p())).collect();
        match self.echelon.reduce(&row, &[], false) {
            (Outcome::Pivot, _) => Err(Error::NotACocycle),
            (Outcome::Dependent, tag) => {
                let mut out = vec![0; self.dim()];
                for (j, x) in tag {
                    out[j as usize] = f.neg(x);
                }
                Ok(out)
            }
        }
    }
}

/// `kernel_of : V → W` and `image_of : U → V`.
pub fn quotient_basis(kernel_of: &SparseMatrix, image_of: &SparseMatrix) -> Result<QuotientBasis> {
    if image_of.rows != kernel_of.cols {
        return Err(Error::DimensionMismatch { expected: kernel_of.cols, found: image_of.rows });
    }
    let f = kernel_of.field;
    let kernel = kernel_basis(kernel_of);
    let mut e = Echelon::new(f, kernel_of.cols, kernel.len());
    for col in image_of.transpose().row_lists() {
        e.insert(&col, &[]);
    }
    let image_rank = e.rank();
    let mut representatives = Vec::new();
    for k in &kernel {
        let row: SparseVec = k.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i as u32, x)).collect();
        let j = representatives.len() as u32;
        if let Outcome::Pivot = e.insert(&row, &[(j, 1)]) {
            representatives.push(k.clone());
        }
    }
    Ok(QuotientBasis {
        field: f,
        dim_ambient: kernel_of.cols,
        kernel_dim: kernel.len(),
        image_rank,
        representatives,
        echelon: e,
    })
}
