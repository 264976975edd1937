//! Sparse integer vectors and column-major sparse matrices.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

pub type Int = BigInt;

/// A sparse integer vector: sorted `(index, value)` pairs with no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Int)>,
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (k, (i, v)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}:{v}")?;
        }
        f.write_str("]")
    }
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(i: usize) -> Self {
        SparseVec { entries: vec![(i, Int::one())] }
    }

    pub fn single(i: usize, v: Int) -> Self {
        if v.is_zero() {
            SparseVec::new()
        } else {
            SparseVec { entries: vec![(i, v)] }
        }
    }

    /// Builds from arbitrary pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs(mut pairs: Vec<(usize, Int)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, Int)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[Int]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn from_i64(v: &[i64]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| **x != 0)
                .map(|(i, x)| (i, Int::from(*x)))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<Int> {
        let mut out = vec![Int::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, Int)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Int)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize) -> Int {
        match self.entries.binary_search_by_key(&i, |p| p.0) {
            Ok(k) => self.entries[k].1.clone(),
            Err(_) => Int::zero(),
        }
    }

    pub fn leading(&self) -> Option<(usize, &Int)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|p| p.0)
    }

    /// `self + c * other`
    pub fn add_scaled(&self, other: &SparseVec, c: &Int) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while a < x.len() || b < y.len() {
            if b >= y.len() || (a < x.len() && x[a].0 < y[b].0) {
                out.push(x[a].clone());
                a += 1;
            } else if a >= x.len() || y[b].0 < x[a].0 {
                out.push((y[b].0, c * &y[b].1));
                b += 1;
            } else {
                let v = &x[a].1 + c * &y[b].1;
                if !v.is_zero() {
                    out.push((x[a].0, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    /// `a * self + b * other`
    pub fn combine(&self, a: &Int, other: &SparseVec, b: &Int) -> SparseVec {
        self.scale(a).add_scaled(other, b)
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &Int::one())
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add_scaled(other, &-Int::one())
    }

    pub fn neg(&self) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        if c.is_one() {
            return self.clone();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    pub fn dot(&self, other: &SparseVec) -> Int {
        let (x, y) = (&self.entries, &other.entries);
        let (mut a, mut b) = (0, 0);
        let mut acc = Int::zero();
        while a < x.len() && b < y.len() {
            match x[a].0.cmp(&y[b].0) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    acc += &x[a].1 * &y[b].1;
                    a += 1;
                    b += 1;
                }
            }
        }
        acc
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> SparseVec {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (i + offset, v.clone())).collect(),
        }
    }

    /// Keeps indices in `[lo, hi)` and re-bases them at zero.
    pub fn window(&self, lo: usize, hi: usize) -> SparseVec {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= lo && *i < hi)
                .map(|(i, v)| (i - lo, v.clone()))
                .collect(),
        }
    }

    pub fn max_abs(&self) -> Int {
        self.entries.iter().map(|(_, v)| v.abs()).max().unwrap_or_else(Int::zero)
    }
}

/// Column-major sparse integer matrix. Column `j` is the image of basis vector `j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(SparseVec::unit).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().map_or(true, |m| m < rows)));
        SparseMatrix { rows, cols }
    }

    /// Row-major dense input.
    pub fn from_rows_i64(rows: &[Vec<i64>], ncols: usize) -> Self {
        let mut cols = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if *v != 0 {
                    cols[j].push((i, Int::from(*v)));
                }
            }
        }
        SparseMatrix {
            rows: rows.len(),
            cols: cols.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn from_dense(rows: &[Vec<Int>], ncols: usize) -> Self {
        let mut cols = vec![Vec::new(); ncols];
        for (i, r) in rows.iter().enumerate() {
            for (j, v) in r.iter().enumerate() {
                if !v.is_zero() {
                    cols[j].push((i, v.clone()));
                }
            }
        }
        SparseMatrix {
            rows: rows.len(),
            cols: cols.into_iter().map(SparseVec::from_pairs).collect(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::zero(); self.cols.len()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                out[*i][j] = v.clone();
            }
        }
        out
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Int {
        self.cols[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc: Vec<(usize, Int)> = Vec::new();
        for (j, c) in x.iter() {
            for (i, v) in self.cols[*j].iter() {
                acc.push((*i, v * c));
            }
        }
        SparseVec::from_pairs(acc)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols(), other.nrows(), "matrix composition dimension mismatch");
        SparseMatrix {
            rows: self.rows,
            cols: other.cols.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(other, &Int::one())
    }

    pub fn sub(&self, other: &SparseMatrix) -> SparseMatrix {
        self.add_scaled(other, &-Int::one())
    }

    pub fn add_scaled(&self, other: &SparseMatrix, c: &Int) -> SparseMatrix {
        assert_eq!((self.rows, self.ncols()), (other.rows, other.ncols()), "matrix sum dimension mismatch");
        SparseMatrix {
            rows: self.rows,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add_scaled(b, c)).collect(),
        }
    }

    pub fn scale(&self, c: &Int) -> SparseMatrix {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn neg(&self) -> SparseMatrix {
        self.scale(&-Int::one())
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for (i, v) in c.iter() {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols.len(),
            cols: cols.into_iter().map(|p| SparseVec { entries: p }).collect(),
        }
    }

    /// Block matrix `[a b]`.
    pub fn hstack(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        assert_eq!(a.rows, b.rows);
        let mut cols = a.cols.clone();
        cols.extend(b.cols.iter().cloned());
        SparseMatrix { rows: a.rows, cols }
    }

    /// Block matrix `[a; b]`.
    pub fn vstack(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
        assert_eq!(a.ncols(), b.ncols());
        SparseMatrix {
            rows: a.rows + b.rows,
            cols: a.cols.iter().zip(&b.cols).map(|(x, y)| x.add(&y.shifted(a.rows))).collect(),
        }
    }

    pub fn block_diag(blocks: &[&SparseMatrix]) -> SparseMatrix {
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut cols = Vec::new();
        let mut off = 0;
        for b in blocks {
            cols.extend(b.cols.iter().map(|c| c.shifted(off)));
            off += b.rows;
        }
        SparseMatrix { rows, cols }
    }
}

/// `a mod m` in `[0, |m|)`; identity when `m == 0`.
pub fn reduce_mod(a: &Int, m: &Int) -> Int {
    if m.is_zero() {
        a.clone()
    } else {
        use num_integer::Integer;
        a.mod_floor(&m.abs())
    }
}
