//! Dense Smith normal form over the integers.

use super::sparse::Int;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Int>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![vec![Int::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Int::one();
        }
        m
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_i64_shape(rows, cols)
    }

    pub fn from_i64_shape(rows: &[Vec<i64>], cols: usize) -> Self {
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().map(|r| r.iter().map(|x| Int::from(*x)).collect()).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.data[i][j].is_zero()))
    }

    /// Determinant by fraction-free Bareiss elimination. Square matrices only.
    pub fn determinant(&self) -> Int {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut a = self.data.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Int::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.rows.min(self.cols)).map(|i| self.data[i][i].clone()).collect()
    }
}

/// `U * M * V = D`, with `U` and `V` unimodular and `D` diagonal with a
/// divisibility chain of non-negative entries. `v_inv` is the inverse of `V`.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SmithDecomposition {
    /// Nonzero diagonal entries followed by zeros, length `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<Int> {
        self.d.diagonal()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Work {
    a: Vec<Vec<Int>>,
    u: Vec<Vec<Int>>,
    v: Vec<Vec<Int>>,
    v_inv: Vec<Vec<Int>>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for r in self.a.iter_mut() {
                r.swap(i, j);
            }
            for r in self.v.iter_mut() {
                r.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        let (ri, rj) = two_mut(&mut self.a, i, j);
        axpy(ri, rj, c);
        let (ui, uj) = two_mut(&mut self.u, i, j);
        axpy(ui, uj, c);
    }

    /// col_i += c * col_j; V picks up the same column op, V⁻¹ the inverse row op.
    fn add_col(&mut self, i: usize, j: usize, c: &Int) {
        if c.is_zero() {
            return;
        }
        for r in self.a.iter_mut() {
            let t = &r[j] * c;
            r[i] += t;
        }
        for r in self.v.iter_mut() {
            let t = &r[j] * c;
            r[i] += t;
        }
        let neg = -c;
        let (vj, vi) = two_mut(&mut self.v_inv, j, i);
        axpy(vj, vi, &neg);
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        for x in self.u[i].iter_mut() {
            *x = -&*x;
        }
    }
}

fn axpy(dst: &mut [Int], src: &[Int], c: &Int) {
    for (d, s) in dst.iter_mut().zip(src) {
        if !s.is_zero() {
            *d += s * c;
        }
    }
}

fn two_mut<T>(v: &mut [T], i: usize, j: usize) -> (&mut T, &T) {
    assert_ne!(i, j);
    if i < j {
        let (a, b) = v.split_at_mut(j);
        (&mut a[i], &b[0])
    } else {
        let (a, b) = v.split_at_mut(i);
        (&mut b[0], &a[j])
    }
}

/// Smith normal form with transforms. Pivots are chosen as the entry of
/// smallest absolute value in the active block, ties broken row-major, so the
/// output is a deterministic function of the input.
pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (m.rows, m.cols);
    let mut w = Work {
        a: m.data.clone(),
        u: IntMatrix::identity(rows).data,
        v: IntMatrix::identity(cols).data,
        v_inv: IntMatrix::identity(cols).data,
    };
    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        let Some((pi, pj)) = min_pivot(&w.a, t) else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if w.a[i][t].is_zero() {
                    continue;
                }
                let q = w.a[i][t].div_floor(&w.a[t][t]);
                w.add_row(i, t, &-q);
                if !w.a[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if w.a[t][j].is_zero() {
                    continue;
                }
                let q = w.a[t][j].div_floor(&w.a[t][t]);
                w.add_col(j, t, &-q);
                if !w.a[t][j].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder is now smaller than the pivot: re-pivot within row t / column t
                let (pi, pj) = min_pivot_cross(&w.a, t);
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            // divisibility of the remaining block
            let p = w.a[t][t].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&w.a[i][j] % &p).is_zero()));
            match bad {
                Some(i) => w.add_row(t, i, &Int::one()),
                None => break,
            }
        }
        if w.a[t][t].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    SmithDecomposition {
        u: IntMatrix { rows, cols: rows, data: w.u },
        d: IntMatrix { rows, cols, data: w.a },
        v: IntMatrix { rows: cols, cols, data: w.v },
        v_inv: IntMatrix { rows: cols, cols, data: w.v_inv },
    }
}

fn min_pivot(a: &[Vec<Int>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(Int, usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |(b, _, _)| ax < *b) {
                best = Some((ax, i, j));
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn min_pivot_cross(a: &[Vec<Int>], t: usize) -> (usize, usize) {
    let mut best = (a[t][t].abs(), t, t);
    for (i, row) in a.iter().enumerate().skip(t + 1) {
        let x = &row[t];
        if !x.is_zero() && x.abs() < best.0 {
            best = (x.abs(), i, t);
        }
    }
    for j in t + 1..a[t].len() {
        let x = &a[t][j];
        if !x.is_zero() && x.abs() < best.0 {
            best = (x.abs(), t, j);
        }
    }
    if best.0.is_zero() {
        // pivot cleared to zero cannot happen: remainders are taken against a nonzero pivot
        unreachable!("zero pivot during Smith reduction");
    }
    (best.1, best.2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(m: &IntMatrix) -> SmithDecomposition {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.v.mul(&s.v_inv), IntMatrix::identity(m.cols));
        assert_eq!(s.u.determinant().abs(), Int::one());
        assert_eq!(s.v.determinant().abs(), Int::one());
        let diag = s.diagonal();
        for w in diag.windows(2) {
            if w[1].is_zero() {
                continue;
            }
            assert!(!w[0].is_zero() && (&w[1] % &w[0]).is_zero(), "chain broken: {diag:?}");
        }
        s
    }

    #[test]
    fn two_by_two() {
        let s = check(&IntMatrix::from_i64(&[vec![2, 4], vec![6, 8]]));
        assert_eq!(s.diagonal(), vec![Int::from(2), Int::from(4)]);
    }

    #[test]
    fn zero_matrix_keeps_identity_transforms() {
        let m = IntMatrix::zeros(3, 2);
        let s = check(&m);
        assert_eq!(s.u, IntMatrix::identity(3));
        assert_eq!(s.v, IntMatrix::identity(2));
        assert_eq!(s.diagonal(), vec![Int::zero(), Int::zero()]);
    }

    #[test]
    fn identity_is_fixed() {
        let s = check(&IntMatrix::identity(4));
        assert_eq!(s.d, IntMatrix::identity(4));
    }

    #[test]
    fn empty_dimensions() {
        let s = check(&IntMatrix::zeros(0, 3));
        assert_eq!(s.v, IntMatrix::identity(3));
        let s = check(&IntMatrix::zeros(2, 0));
        assert_eq!(s.u, IntMatrix::identity(2));
    }

    #[test]
    fn needs_divisibility_fix() {
        let s = check(&IntMatrix::from_i64(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal(), vec![Int::from(1), Int::from(6)]);
    }

    #[test]
    fn deterministic() {
        let m = IntMatrix::from_i64(&[vec![3, -7, 2], vec![5, 1, 9], vec![-4, 6, 6]]);
        let a = smith_normal_form(&m);
        let b = smith_normal_form(&m);
        assert_eq!(a.u, b.u);
        assert_eq!(a.v, b.v);
    }
}
