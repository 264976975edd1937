//! Bilinear braiding pairings `β: C0 × C0 → C1` stored as sums of rank-one terms.

use crate::fgab::{SparseMatrix, SparseVec};
use num_traits::Zero;

/// One term `(x, y) ↦ (left·x)(right·y) value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidTerm {
    pub left: SparseVec,
    pub right: SparseVec,
    pub value: SparseVec,
}

/// `β(x, y) = Σ_k (left_k·x)(right_k·y) value_k`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Braiding {
    terms: Vec<BraidTerm>,
}

impl Braiding {
    pub fn zero() -> Self {
        Braiding { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<BraidTerm>) -> Self {
        let terms = terms
            .into_iter()
            .filter(|t| !(t.left.is_zero() || t.right.is_zero() || t.value.is_zero()))
            .collect();
        Braiding { terms }
    }

    /// From a table of values on generator pairs: `table[(i, j)] = β(e_i, e_j)`.
    pub fn from_table(entries: impl IntoIterator<Item = ((usize, usize), SparseVec)>) -> Self {
        Self::from_terms(
            entries
                .into_iter()
                .map(|((i, j), v)| BraidTerm { left: SparseVec::unit(i), right: SparseVec::unit(j), value: v })
                .collect(),
        )
    }

    /// Diagonal form `β(x, y) = Σ_i (coord_i·x)(coord_i·y) v_i`.
    pub fn diagonal(coords: &[SparseVec], values: &[SparseVec]) -> Self {
        Self::from_terms(
            coords
                .iter()
                .zip(values)
                .map(|(c, v)| BraidTerm { left: c.clone(), right: c.clone(), value: v.clone() })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[BraidTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for t in &self.terms {
            let a = t.left.dot(x);
            if a.is_zero() {
                continue;
            }
            let b = t.right.dot(y);
            if b.is_zero() {
                continue;
            }
            acc = acc.add_scaled(&t.value, &(a * b));
        }
        acc
    }

    /// Matrix of `x ↦ β(x, x)` on generators (additive modulo 2-torsion
    /// for antisymmetric β).
    pub fn self_pairing(&self, ngens0: usize, ngens1: usize) -> SparseMatrix {
        SparseMatrix::from_columns(
            ngens1,
            (0..ngens0).map(|i| {
                let e = SparseVec::unit(i);
                self.eval(&e, &e)
            }).collect(),
        )
    }

    /// `β(f x, f y)` for a matrix `f` into the source coordinates.
    pub fn pullback(&self, f: &SparseMatrix) -> Braiding {
        let ft = f.transpose();
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| BraidTerm { left: ft.apply(&t.left), right: ft.apply(&t.right), value: t.value.clone() })
                .collect(),
        )
    }

    /// `g ∘ β` for a matrix `g` out of the value coordinates.
    pub fn pushforward(&self, g: &SparseMatrix) -> Braiding {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| BraidTerm { left: t.left.clone(), right: t.right.clone(), value: g.apply(&t.value) })
                .collect(),
        )
    }

    /// Block sum for products: each braiding acts on its own coordinate block.
    pub fn direct_sum(parts: &[(&Braiding, usize, usize)]) -> Braiding {
        let mut terms = Vec::new();
        let (mut off0, mut off1) = (0, 0);
        for (b, n0, n1) in parts {
            for t in &b.terms {
                terms.push(BraidTerm {
                    left: t.left.shifted(off0),
                    right: t.right.shifted(off0),
                    value: t.value.shifted(off1),
                });
            }
            off0 += n0;
            off1 += n1;
        }
        Braiding { terms }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_eval_is_bilinear() {
        let b = Braiding::from_table([((0, 1), SparseVec::from_i64(&[1])), ((1, 0), SparseVec::from_i64(&[-1]))]);
        let x = SparseVec::from_i64(&[2, 3]);
        let y = SparseVec::from_i64(&[1, 5]);
        // 2*5*1 + 3*1*(-1) = 7
        assert_eq!(b.eval(&x, &y), SparseVec::from_i64(&[7]));
    }

    #[test]
    fn pullback_and_pushforward() {
        let b = Braiding::diagonal(&[SparseVec::unit(0)], &[SparseVec::unit(0)]);
        let f = SparseMatrix::from_rows_i64(&[vec![2, 1]], 2);
        let p = b.pullback(&f);
        assert_eq!(p.eval(&SparseVec::unit(0), &SparseVec::unit(1)), SparseVec::from_i64(&[2]));
        let g = SparseMatrix::from_rows_i64(&[vec![3]], 1);
        assert_eq!(b.pushforward(&g).eval(&SparseVec::unit(0), &SparseVec::unit(0)), SparseVec::from_i64(&[3]));
    }
}
