//! Presented abelian 2-groups: a two-term complex `d: C1 → C0` of abelian
//! groups together with a braiding `β: C0 × C0 → C1`.
//!
//! Objects are elements of `C0`; morphisms `x → y` are `m ∈ C1` with
//! `x + d m = y`; the symmetry `x + y → y + x` is `β(x, y)`.

use super::braiding::Braiding;
use crate::error::{Error, Result};
use crate::fgab::{format_invariants, FgAbGroup, GroupHom, Int, SparseMatrix, SparseVec, Subquotient};
use std::fmt;
use std::sync::{Arc, OnceLock};

#[derive(Clone)]
pub struct Pic2Group {
    inner: Arc<PicData>,
}

struct PicData {
    c1: FgAbGroup,
    c0: FgAbGroup,
    d: GroupHom,
    braid: Braiding,
    pi0: OnceLock<FgAbGroup>,
    pi1: OnceLock<Subquotient>,
}

/// Isomorphism-class data compared when asking whether two 2-groups agree:
/// `π^0`, `π^{-1}` and the image, kernel and cokernel of `q: π^0 → π^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QData {
    pub pi0: Vec<Int>,
    pub pi1: Vec<Int>,
    pub q_image: Vec<Int>,
    pub q_kernel: Vec<Int>,
    pub q_cokernel: Vec<Int>,
}

impl QData {
    pub fn q_trivial(&self) -> bool {
        self.q_image.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.pi0.is_empty() && self.pi1.is_empty()
    }
}

impl fmt::Display for QData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pi0={}, pi1={}, q={}",
            format_invariants(&self.pi0),
            format_invariants(&self.pi1),
            if self.q_trivial() { "0" } else { "nontrivial" }
        )
    }
}

impl fmt::Debug for Pic2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pic2Group(C1: {} gens, C0: {} gens)", self.c1().ngens(), self.c0().ngens())
    }
}

impl fmt::Display for Pic2Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.qdata())
    }
}

impl Pic2Group {
    /// Validated constructor.
    pub fn new(c1: FgAbGroup, c0: FgAbGroup, d: SparseMatrix, braid: Braiding) -> Result<Self> {
        let d = GroupHom::new(c1.clone(), c0.clone(), d)?;
        let p = Self::from_parts(c1, c0, d, braid);
        p.validate()?;
        Ok(p)
    }

    pub(crate) fn from_parts(c1: FgAbGroup, c0: FgAbGroup, d: GroupHom, braid: Braiding) -> Self {
        Pic2Group { inner: Arc::new(PicData { c1, c0, d, braid, pi0: OnceLock::new(), pi1: OnceLock::new() }) }
    }

    /// `K(f)`: objects `A^0`, morphisms from `f`; strictly commutative.
    pub fn from_hom(f: &GroupHom) -> Self {
        Self::from_parts(f.source().clone(), f.target().clone(), f.clone(), Braiding::zero())
    }

    /// The 2-group whose objects are integers, with automorphism group `Z/2`
    /// on each object and symmetry `(-1)^{nm}`.
    pub fn phi() -> Self {
        let c0 = FgAbGroup::free(1);
        let c1 = FgAbGroup::cyclic(2);
        let d = GroupHom::zero(&c1, &c0);
        let braid = Braiding::diagonal(&[SparseVec::unit(0)], &[SparseVec::unit(0)]);
        Self::from_parts(c1, c0, d, braid)
    }

    pub fn zero() -> Self {
        Self::from_hom(&GroupHom::zero(&FgAbGroup::zero(), &FgAbGroup::zero()))
    }

    /// Discrete 2-group on an abelian group (no nontrivial morphisms).
    pub fn discrete(g: &FgAbGroup) -> Self {
        Self::from_hom(&GroupHom::zero(&FgAbGroup::zero(), g))
    }

    /// One-object 2-group with automorphisms `g`.
    pub fn suspension(g: &FgAbGroup) -> Self {
        Self::from_hom(&GroupHom::zero(g, &FgAbGroup::zero()))
    }

    /// Componentwise product.
    pub fn product(parts: &[Pic2Group]) -> Self {
        let c1s: Vec<&FgAbGroup> = parts.iter().map(|p| p.c1()).collect();
        let c0s: Vec<&FgAbGroup> = parts.iter().map(|p| p.c0()).collect();
        let c1 = FgAbGroup::direct_sum(&c1s);
        let c0 = FgAbGroup::direct_sum(&c0s);
        let ds: Vec<&SparseMatrix> = parts.iter().map(|p| p.d().matrix()).collect();
        let d = GroupHom::new_unchecked(c1.clone(), c0.clone(), SparseMatrix::block_diag(&ds));
        let bs: Vec<(&Braiding, usize, usize)> =
            parts.iter().map(|p| (p.braiding(), p.c0().ngens(), p.c1().ngens())).collect();
        Self::from_parts(c1, c0, d, Braiding::direct_sum(&bs))
    }

    /// `Ω P`: the discrete 2-group on `π^{-1} P`.
    pub fn loop_group(&self) -> Self {
        Self::discrete(self.pi1())
    }

    /// Builds the braiding realizing a given self-pairing `q: C0 → C1`
    /// (columns are `q(e_i)`), which must land in `ker d`, be 2-torsion and
    /// vanish on `im d` and relators.
    pub fn realize(c1: FgAbGroup, c0: FgAbGroup, d: GroupHom, q: &SparseMatrix) -> Self {
        let pi0 = c0.quotient_by(d.matrix().columns().iter().cloned());
        let braid = realize_braiding(&pi0, q);
        let p = Self::from_parts(c1, c0, d, braid);
        let _ = p.inner.pi0.set(pi0);
        p
    }

    pub fn c1(&self) -> &FgAbGroup {
        &self.inner.c1
    }

    pub fn c0(&self) -> &FgAbGroup {
        &self.inner.c0
    }

    pub fn d(&self) -> &GroupHom {
        &self.inner.d
    }

    pub fn braiding(&self) -> &Braiding {
        &self.inner.braid
    }

    pub fn braid(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        self.inner.braid.eval(x, y)
    }

    /// `x ↦ β(x, x)` as a matrix `C0 → C1`.
    pub fn q_matrix(&self) -> SparseMatrix {
        self.inner.braid.self_pairing(self.c0().ngens(), self.c1().ngens())
    }

    /// Checks all structural invariants on generator pairs. Quadratic in the
    /// number of object generators.
    pub fn validate(&self) -> Result<()> {
        let (c0, c1, d) = (self.c0(), self.c1(), self.d());
        let n0 = c0.ngens();
        let units: Vec<SparseVec> = (0..n0).map(SparseVec::unit).collect();
        for i in 0..n0 {
            for j in 0..n0 {
                let b = self.braid(&units[i], &units[j]);
                if !c0.is_zero_element(&d.apply(&b)) {
                    return Err(Error::Invariant(format!("d(β(e{i}, e{j})) ≠ 0")));
                }
                if j >= i {
                    let s = b.add(&self.braid(&units[j], &units[i]));
                    if !c1.is_zero_element(&s) {
                        return Err(Error::Invariant(format!("β(e{i}, e{j}) + β(e{j}, e{i}) ≠ 0")));
                    }
                }
            }
        }
        for (k, r) in c0.relations().iter().enumerate() {
            for j in 0..n0 {
                if !c1.is_zero_element(&self.braid(r, &units[j])) {
                    return Err(Error::Invariant(format!("β does not descend: relator {k} paired with e{j}")));
                }
            }
        }
        for (k, col) in d.matrix().columns().iter().enumerate() {
            for j in 0..n0 {
                if !c1.is_zero_element(&self.braid(col, &units[j])) {
                    return Err(Error::Invariant(format!("β(d f{k}, e{j}) ≠ 0")));
                }
            }
        }
        Ok(())
    }

    /// `π^0 = coker d`, on the generators of `C0`.
    pub fn pi0(&self) -> &FgAbGroup {
        self.inner.pi0.get_or_init(|| self.c0().quotient_by(self.d().matrix().columns().iter().cloned()))
    }

    /// `π^{-1} = ker d` as a subquotient of `C1`.
    pub fn pi1_sub(&self) -> &Subquotient {
        self.inner.pi1.get_or_init(|| self.d().kernel().sub)
    }

    pub fn pi1(&self) -> &FgAbGroup {
        &self.pi1_sub().group
    }

    /// `q: π^0 → π^{-1}`, `a ↦ β(a, a)`; it factors through `π^0 / 2π^0`.
    pub fn q_hom(&self) -> GroupHom {
        self.pi1_sub()
            .induced_from(self.pi0(), &self.q_matrix())
            .expect("self-pairing of a valid 2-group lands in ker d")
    }

    pub fn qdata(&self) -> QData {
        let q = self.q_hom();
        let (img, _, _) = q.image();
        QData {
            pi0: self.pi0().invariants(),
            pi1: self.pi1().invariants(),
            q_image: img.invariants(),
            q_kernel: q.kernel().group().invariants(),
            q_cokernel: q.cokernel().0.invariants(),
        }
    }

    pub fn is_strictly_commutative(&self) -> bool {
        self.q_hom().is_zero_map()
    }

    /// Equivalence is decided on π-data and `q`.
    pub fn equivalent(&self, other: &Pic2Group) -> bool {
        self.qdata() == other.qdata()
    }
}

/// Braiding `β(x, y) = Σ_i (T x)_i (T y)_i q(ℓ_i)` where `T` is the diagonal
/// coordinate map of `pi0` and `ℓ_i` lifts its `i`-th basis element.
pub(crate) fn realize_braiding(pi0: &FgAbGroup, q: &SparseMatrix) -> Braiding {
    let s = pi0.smith();
    let rows = s.to_diag.transpose();
    let mut coords = Vec::new();
    let mut values = Vec::new();
    for i in 0..s.diag.len() {
        let v = q.apply(s.from_diag.col(i));
        if v.is_zero() {
            continue;
        }
        coords.push(rows.col(i).clone());
        values.push(v);
    }
    Braiding::diagonal(&coords, &values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| Int::from(*x)).collect()
    }

    #[test]
    fn phi_invariants() {
        let p = Pic2Group::phi();
        p.validate().unwrap();
        assert_eq!(p.pi0().invariants(), ints(&[0]));
        assert_eq!(p.pi1().invariants(), ints(&[2]));
        assert!(!p.is_strictly_commutative());
        assert_eq!(p.to_string(), "pi0=Z, pi1=Z/2, q=nontrivial");
    }

    #[test]
    fn k_of_times_two() {
        let z = FgAbGroup::free(1);
        let f = GroupHom::from_rows_i64(z.clone(), z, &[vec![2]]).unwrap();
        let p = Pic2Group::from_hom(&f);
        assert_eq!(p.pi0().invariants(), ints(&[2]));
        assert!(p.pi1().is_trivial());
        assert!(p.is_strictly_commutative());
    }

    #[test]
    fn loop_of_phi() {
        let l = Pic2Group::phi().loop_group();
        assert_eq!(l.pi0().invariants(), ints(&[2]));
        assert!(l.pi1().is_trivial());
    }

    #[test]
    fn product_is_componentwise() {
        let p = Pic2Group::product(&[Pic2Group::phi(), Pic2Group::phi()]);
        p.validate().unwrap();
        assert_eq!(p.pi0().invariants(), ints(&[0, 0]));
        assert_eq!(p.pi1().invariants(), ints(&[2, 2]));
        assert_eq!(p.qdata().q_image, ints(&[2, 2]));
    }

    #[test]
    fn bad_braiding_rejected() {
        let c0 = FgAbGroup::free(1);
        let c1 = FgAbGroup::free(1);
        let d = SparseMatrix::zero(1, 1);
        // β(e0, e0) = 1 in Z is not antisymmetric
        let b = Braiding::from_table([((0, 0), SparseVec::unit(0))]);
        let err = Pic2Group::new(c1, c0, d, b).unwrap_err();
        assert!(err.to_string().contains("e0"));
    }

    #[test]
    fn realize_matches_q() {
        // C0 = Z^2, C1 = Z/2, q(e0) = 1, q(e1) = 1
        let c0 = FgAbGroup::free(2);
        let c1 = FgAbGroup::cyclic(2);
        let d = GroupHom::zero(&c1, &c0);
        let q = SparseMatrix::from_rows_i64(&[vec![1, 1]], 2);
        let p = Pic2Group::realize(c1, c0, d, &q);
        p.validate().unwrap();
        assert!(p.q_matrix().sub(&q).columns().iter().all(|c| p.c1().is_zero_element(c)));
    }
}
