//! Cochain complexes of presented abelian groups over a finite degree window.

use super::group::FgAbGroup;
use super::hom::{GroupHom, Subquotient};
use super::lattice::Echelon;
use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// `C^lo → C^{lo+1} → … → C^hi`, zero outside the window.
#[derive(Clone, Debug)]
pub struct AbCochainComplex {
    lo: i64,
    groups: Vec<FgAbGroup>,
    diffs: Vec<GroupHom>,
}

impl AbCochainComplex {
    /// `diffs[k]` goes from `groups[k]` to `groups[k + 1]`.
    pub fn new(lo: i64, groups: Vec<FgAbGroup>, diffs: Vec<GroupHom>) -> Result<Self> {
        if groups.is_empty() {
            return Err(Error::Dimension("a complex needs at least one degree".into()));
        }
        if diffs.len() + 1 != groups.len() {
            return Err(Error::Dimension(format!(
                "{} groups need {} differentials, got {}",
                groups.len(),
                groups.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source().ngens() != groups[k].ngens() || d.target().ngens() != groups[k + 1].ngens() {
                return Err(Error::Dimension(format!("differential in degree {} has the wrong shape", lo + k as i64)));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k + 1].compose(&diffs[k]).is_zero_map() {
                return Err(Error::Invariant(format!("δ∘δ ≠ 0 starting in degree {}", lo + k as i64)));
            }
        }
        Ok(AbCochainComplex { lo, groups, diffs })
    }

    /// Shapes and `δ∘δ = 0` are the caller's responsibility.
    pub(crate) fn new_unchecked(lo: i64, groups: Vec<FgAbGroup>, diffs: Vec<GroupHom>) -> Self {
        debug_assert_eq!(diffs.len() + 1, groups.len());
        AbCochainComplex { lo, groups, diffs }
    }

    /// All differentials zero.
    pub fn with_zero_differentials(lo: i64, groups: Vec<FgAbGroup>) -> Self {
        let diffs = groups.windows(2).map(|w| GroupHom::zero(&w[0], &w[1])).collect();
        AbCochainComplex { lo, groups, diffs }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.groups.len() as i64 - 1
    }

    pub fn in_window(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    /// `C^n`, the zero group outside the window.
    pub fn group(&self, n: i64) -> FgAbGroup {
        if self.in_window(n) {
            self.groups[(n - self.lo) as usize].clone()
        } else {
            FgAbGroup::zero()
        }
    }

    /// `δ^n: C^n → C^{n+1}` with zero padding.
    pub fn differential(&self, n: i64) -> GroupHom {
        if n >= self.lo && n < self.hi() {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            GroupHom::zero(&self.group(n), &self.group(n + 1))
        }
    }

    /// `ker δ^n / im δ^{n-1}` with its lattice description.
    pub fn cohomology_subquotient(&self, n: i64) -> Result<Subquotient> {
        if !self.in_window(n) {
            return Err(Error::DegreeOutOfWindow { degree: n, lo: self.lo, hi: self.hi() });
        }
        let c = self.group(n);
        let kernel = self.differential(n).kernel_lattice();
        let prev = self.differential(n - 1);
        Ok(Subquotient::new(&c, kernel, prev.matrix().columns()))
    }

    pub fn cohomology(&self, n: i64) -> Result<FgAbGroup> {
        Ok(self.cohomology_subquotient(n)?.group)
    }
}

/// Cohomology at the middle of `A --f--> B --g--> C` for maps known to compose to zero.
pub fn middle_cohomology(f: &GroupHom, g: &GroupHom) -> Subquotient {
    Subquotient::new(g.source(), g.kernel_lattice(), f.matrix().columns())
}

/// Cohomology subquotient of a bare matrix complex `Z^a → Z^b → Z^c` where the
/// middle group carries the given relators (used by cone complexes).
pub fn lattice_cohomology(middle: &FgAbGroup, incoming: &SparseMatrix, outgoing: &GroupHom) -> Subquotient {
    let lat: Echelon = outgoing.kernel_lattice();
    Subquotient::new(middle, lat, incoming.columns())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::sparse::Int;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| Int::from(*x)).collect()
    }

    #[test]
    fn times_two_complex() {
        let z = FgAbGroup::free(1);
        let d = GroupHom::from_rows_i64(z.clone(), z.clone(), &[vec![2]]).unwrap();
        let c = AbCochainComplex::new(0, vec![z.clone(), z], vec![d]).unwrap();
        assert!(c.cohomology(0).unwrap().is_trivial());
        assert_eq!(c.cohomology(1).unwrap().invariants(), ints(&[2]));
        assert!(c.cohomology(2).is_err());
    }

    #[test]
    fn triangle_boundary() {
        // vertices 0,1,2; edges 01, 02, 12; δ(v)(e) = v(head) - v(tail)
        let c0 = FgAbGroup::free(3);
        let c1 = FgAbGroup::free(3);
        let d = GroupHom::from_rows_i64(c0.clone(), c1.clone(), &[vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]])
            .unwrap();
        let c = AbCochainComplex::new(0, vec![c0, c1], vec![d]).unwrap();
        assert_eq!(c.cohomology(0).unwrap().invariants(), ints(&[0]));
        assert_eq!(c.cohomology(1).unwrap().invariants(), ints(&[0]));
    }

    #[test]
    fn zero_differentials_return_groups() {
        let gs = vec![FgAbGroup::cyclic(3), FgAbGroup::free(2)];
        let c = AbCochainComplex::with_zero_differentials(-1, gs.clone());
        for (k, g) in gs.iter().enumerate() {
            assert!(c.cohomology(-1 + k as i64).unwrap().is_isomorphic(g));
        }
    }

    #[test]
    fn non_complex_rejected() {
        let z = FgAbGroup::free(1);
        let id = GroupHom::identity(&z);
        assert!(AbCochainComplex::new(0, vec![z.clone(), z.clone(), z], vec![id.clone(), id]).is_err());
    }
}
