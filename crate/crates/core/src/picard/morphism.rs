//! Strict morphisms of presented 2-groups and tracks between them.

use super::pic::Pic2Group;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, Int, SparseMatrix, SparseVec};

/// A pair of homomorphisms `f1: C1 → C1'`, `f0: C0 → C0'` commuting with `d`
/// and preserving the self-pairing `q`. When it also preserves β on all
/// pairs it is a strict symmetric monoidal functor.
#[derive(Clone, Debug)]
pub struct StrictMor {
    source: Pic2Group,
    target: Pic2Group,
    f1: SparseMatrix,
    f0: SparseMatrix,
    braided: bool,
}

/// π-level behaviour of a morphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub faithful: bool,
    pub cofaithful: bool,
    pub equivalence: bool,
}

fn is_zero_matrix_into(g: &FgAbGroup, m: &SparseMatrix) -> bool {
    m.columns().iter().all(|c| g.is_zero_element(c))
}

impl StrictMor {
    /// Strict symmetric monoidal functor; every invariant is checked.
    pub fn new(source: &Pic2Group, target: &Pic2Group, f1: SparseMatrix, f0: SparseMatrix) -> Result<Self> {
        let mut m = Self::chain_map(source, target, f1, f0)?;
        if let Some((i, j)) = m.braiding_defect() {
            return Err(Error::Invariant(format!("f1 β(e{i}, e{j}) ≠ β'(f0 e{i}, f0 e{j})")));
        }
        m.braided = true;
        Ok(m)
    }

    /// Checks well-definedness, `f0 d = d' f1` and `f1 q = q' f0`, but not the
    /// full braiding. Alternating sums of strict morphisms are of this kind.
    pub fn chain_map(source: &Pic2Group, target: &Pic2Group, f1: SparseMatrix, f0: SparseMatrix) -> Result<Self> {
        GroupHom::new(source.c1().clone(), target.c1().clone(), f1.clone())?;
        GroupHom::new(source.c0().clone(), target.c0().clone(), f0.clone())?;
        let lhs = f0.compose(source.d().matrix());
        let rhs = target.d().matrix().compose(&f1);
        if !is_zero_matrix_into(target.c0(), &lhs.sub(&rhs)) {
            return Err(Error::Invariant("f0 ∘ d ≠ d' ∘ f1".into()));
        }
        let m = StrictMor { source: source.clone(), target: target.clone(), f1, f0, braided: false };
        if !m.preserves_q() {
            return Err(Error::Invariant("f1 ∘ q ≠ q' ∘ f0".into()));
        }
        Ok(m)
    }

    pub(crate) fn new_unchecked(
        source: &Pic2Group,
        target: &Pic2Group,
        f1: SparseMatrix,
        f0: SparseMatrix,
        braided: bool,
    ) -> Self {
        debug_assert_eq!(f1.ncols(), source.c1().ngens());
        debug_assert_eq!(f1.nrows(), target.c1().ngens());
        debug_assert_eq!(f0.ncols(), source.c0().ngens());
        debug_assert_eq!(f0.nrows(), target.c0().ngens());
        StrictMor { source: source.clone(), target: target.clone(), f1, f0, braided }
    }

    pub fn identity(p: &Pic2Group) -> Self {
        Self::new_unchecked(p, p, SparseMatrix::identity(p.c1().ngens()), SparseMatrix::identity(p.c0().ngens()), true)
    }

    pub fn zero(a: &Pic2Group, b: &Pic2Group) -> Self {
        Self::new_unchecked(
            a,
            b,
            SparseMatrix::zero(b.c1().ngens(), a.c1().ngens()),
            SparseMatrix::zero(b.c0().ngens(), a.c0().ngens()),
            true,
        )
    }

    pub fn source(&self) -> &Pic2Group {
        &self.source
    }

    pub fn target(&self) -> &Pic2Group {
        &self.target
    }

    pub fn f1(&self) -> &SparseMatrix {
        &self.f1
    }

    pub fn f0(&self) -> &SparseMatrix {
        &self.f0
    }

    pub fn f1_hom(&self) -> GroupHom {
        GroupHom::new_unchecked(self.source.c1().clone(), self.target.c1().clone(), self.f1.clone())
    }

    pub fn f0_hom(&self) -> GroupHom {
        GroupHom::new_unchecked(self.source.c0().clone(), self.target.c0().clone(), self.f0.clone())
    }

    pub fn preserves_q(&self) -> bool {
        let lhs = self.f1.compose(&self.source.q_matrix());
        let rhs = self.target.q_matrix().compose(&self.f0);
        is_zero_matrix_into(self.target.c1(), &lhs.sub(&rhs))
    }

    /// First generator pair on which the braiding is not preserved.
    pub fn braiding_defect(&self) -> Option<(usize, usize)> {
        let n = self.source.c0().ngens();
        let imgs: Vec<SparseVec> = self.f0.columns().to_vec();
        for i in 0..n {
            for j in 0..n {
                let lhs = self.f1.apply(&self.source.braid(&SparseVec::unit(i), &SparseVec::unit(j)));
                let rhs = self.target.braid(&imgs[i], &imgs[j]);
                if !self.target.c1().elements_equal(&lhs, &rhs) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn preserves_braiding(&self) -> bool {
        self.braided || self.braiding_defect().is_none()
    }

    pub(crate) fn known_braided(&self) -> bool {
        self.braided
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &StrictMor) -> StrictMor {
        Self::new_unchecked(
            &other.source,
            &self.target,
            self.f1.compose(&other.f1),
            self.f0.compose(&other.f0),
            self.braided && other.braided,
        )
    }

    /// Pointwise sum; preserves `q` but in general not β.
    pub fn add(&self, other: &StrictMor) -> StrictMor {
        Self::new_unchecked(&self.source, &self.target, self.f1.add(&other.f1), self.f0.add(&other.f0), false)
    }

    pub fn scale(&self, c: &Int) -> StrictMor {
        Self::new_unchecked(&self.source, &self.target, self.f1.scale(c), self.f0.scale(c), false)
    }

    pub fn neg(&self) -> StrictMor {
        self.scale(&Int::from(-1))
    }

    pub fn on_pi0(&self) -> GroupHom {
        GroupHom::new_unchecked(self.source.pi0().clone(), self.target.pi0().clone(), self.f0.clone())
    }

    pub fn on_pi1(&self) -> GroupHom {
        self.source
            .pi1_sub()
            .induced(self.target.pi1_sub(), &self.f1)
            .expect("chain maps send cycles to cycles")
    }

    pub fn classify(&self) -> Classification {
        let p1 = self.on_pi1();
        let p0 = self.on_pi0();
        let faithful = p1.is_injective();
        let cofaithful = p0.is_surjective();
        let equivalence = faithful && cofaithful && p1.is_surjective() && p0.is_injective();
        Classification { faithful, cofaithful, equivalence }
    }

    /// Equality of both component maps as homomorphisms.
    pub fn equals(&self, other: &StrictMor) -> bool {
        is_zero_matrix_into(self.target.c1(), &self.f1.sub(&other.f1))
            && is_zero_matrix_into(self.target.c0(), &self.f0.sub(&other.f0))
    }
}

/// A monoidal transformation `from ⇒ to`, given by `t: C0 → C1'` with
/// `d' t = to0 - from0` and `t d = to1 - from1`.
#[derive(Clone, Debug)]
pub struct Track {
    from: StrictMor,
    to: StrictMor,
    t: SparseMatrix,
}

impl Track {
    pub fn new(from: &StrictMor, to: &StrictMor, t: SparseMatrix) -> Result<Self> {
        let (a, b) = (from.source(), from.target());
        GroupHom::new(a.c0().clone(), b.c1().clone(), t.clone())?;
        let lhs0 = b.d().matrix().compose(&t);
        if !is_zero_matrix_into(b.c0(), &lhs0.sub(&to.f0.sub(&from.f0))) {
            return Err(Error::Invariant("track: d' t ≠ g0 - f0".into()));
        }
        let lhs1 = t.compose(a.d().matrix());
        if !is_zero_matrix_into(b.c1(), &lhs1.sub(&to.f1.sub(&from.f1))) {
            return Err(Error::Invariant("track: t d ≠ g1 - f1".into()));
        }
        Ok(Track { from: from.clone(), to: to.clone(), t })
    }

    pub(crate) fn new_unchecked(from: &StrictMor, to: &StrictMor, t: SparseMatrix) -> Self {
        Track { from: from.clone(), to: to.clone(), t }
    }

    /// Identity track `f ⇒ f`.
    pub fn identity(f: &StrictMor) -> Self {
        let t = SparseMatrix::zero(f.target.c1().ngens(), f.source.c0().ngens());
        Track { from: f.clone(), to: f.clone(), t }
    }

    pub fn from(&self) -> &StrictMor {
        &self.from
    }

    pub fn to(&self) -> &StrictMor {
        &self.to
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.t
    }

    /// Vertical composite `self` then `next`.
    pub fn then(&self, next: &Track) -> Track {
        Track { from: self.from.clone(), to: next.to.clone(), t: self.t.add(&next.t) }
    }

    pub fn inverse(&self) -> Track {
        Track { from: self.to.clone(), to: self.from.clone(), t: self.t.neg() }
    }

    /// `h ∘ self`
    pub fn whisker_left(&self, h: &StrictMor) -> Track {
        Track { from: h.compose(&self.from), to: h.compose(&self.to), t: h.f1.compose(&self.t) }
    }

    /// `self ∘ k`
    pub fn whisker_right(&self, k: &StrictMor) -> Track {
        Track { from: self.from.compose(k), to: self.to.compose(k), t: self.t.compose(&k.f0) }
    }

    pub fn equals(&self, other: &Track) -> bool {
        is_zero_matrix_into(self.from.target.c1(), &self.t.sub(&other.t))
    }
}
