//! The cone complex `T^n = C0^n ⊕ C1^{n+1}` whose cohomology is `H^n_U`.

use super::complex::TwoCochainComplex;
use crate::fgab::{AbCochainComplex, Echelon, FgAbGroup, GroupHom, SparseMatrix, Subquotient};

/// An abelian cochain complex whose cohomology is zero outside its window.
#[derive(Clone, Debug)]
pub struct PaddedComplex {
    pub inner: AbCochainComplex,
}

impl PaddedComplex {
    pub fn group(&self, n: i64) -> FgAbGroup {
        self.inner.group(n)
    }

    pub fn differential(&self, n: i64) -> GroupHom {
        self.inner.differential(n)
    }

    pub fn subquotient(&self, n: i64) -> Subquotient {
        if self.inner.in_window(n) {
            self.inner.cohomology_subquotient(n).expect("degree in window")
        } else {
            Subquotient::new(&FgAbGroup::zero(), Echelon::new(), &[])
        }
    }

    pub fn cohomology(&self, n: i64) -> FgAbGroup {
        self.subquotient(n).group
    }
}

/// `D(a, m) = (d^n_0 a - d m, -s^n a - d^{n+1}_1 m)`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: PaddedComplex,
    lo: i64,
    /// generators of `C0^n`, i.e. where the `C1^{n+1}` block starts
    split: Vec<usize>,
}

impl Cone {
    pub fn new(c: &TwoCochainComplex) -> Self {
        let (lo, hi) = (c.lo() - 1, c.hi());
        let mut groups = Vec::new();
        let mut split = Vec::new();
        for n in lo..=hi {
            groups.push(FgAbGroup::direct_sum(&[c.object(n).c0(), c.object(n + 1).c1()]));
            split.push(c.object(n).c0().ngens());
        }
        let mut diffs = Vec::new();
        for n in lo..hi {
            let d = c.diff(n);
            let a1 = c.object(n + 1);
            let top = SparseMatrix::hstack(d.f0(), &a1.d().matrix().neg());
            let bottom = SparseMatrix::hstack(&c.track(n).neg(), &c.diff(n + 1).f1().neg());
            let m = SparseMatrix::vstack(&top, &bottom);
            let k = (n - lo) as usize;
            diffs.push(GroupHom::new_unchecked(groups[k].clone(), groups[k + 1].clone(), m));
        }
        // well defined and squaring to zero because c is a valid complex
        let inner = AbCochainComplex::new_unchecked(lo, groups, diffs);
        Cone { complex: PaddedComplex { inner }, lo, split }
    }

    /// Number of `C0^n` generators at the front of `T^n`.
    pub fn split(&self, n: i64) -> usize {
        if self.complex.inner.in_window(n) {
            self.split[(n - self.lo) as usize]
        } else {
            0
        }
    }

    pub fn group(&self, n: i64) -> FgAbGroup {
        self.complex.group(n)
    }

    pub fn subquotient(&self, n: i64) -> Subquotient {
        self.complex.subquotient(n)
    }
}

/// `H^n_U` of a 2-cochain complex.
pub fn tu_cohomology(c: &TwoCochainComplex, n: i64) -> FgAbGroup {
    Cone::new(c).complex.cohomology(n)
}
