//! Homomorphisms between presented groups, with kernels, images, cokernels,
//! preimages and exactness tests.

use super::group::FgAbGroup;
use super::lattice::{kernel_modulo, Echelon};
use super::sparse::{Int, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use num_traits::Zero;

/// A homomorphism given by its matrix on generators: column `j` is the image
/// of source generator `j` in target generators.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: SparseMatrix,
}

impl GroupHom {
    /// Validates shape and that relators map to zero.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: SparseMatrix) -> Result<Self> {
        if matrix.ncols() != source.ngens() || matrix.nrows() != target.ngens() {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.nrows(),
                matrix.ncols(),
                target.ngens(),
                source.ngens()
            )));
        }
        for (k, r) in source.relations().iter().enumerate() {
            if !target.is_zero_element(&matrix.apply(r)) {
                return Err(Error::IllDefined(format!("source relator {k} does not map to zero")));
            }
        }
        Ok(GroupHom { source, target, matrix })
    }

    pub(crate) fn new_unchecked(source: FgAbGroup, target: FgAbGroup, matrix: SparseMatrix) -> Self {
        debug_assert_eq!(matrix.ncols(), source.ngens());
        debug_assert_eq!(matrix.nrows(), target.ngens());
        GroupHom { source, target, matrix }
    }

    pub fn from_rows_i64(source: FgAbGroup, target: FgAbGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let nc = source.ngens();
        if rows.len() != target.ngens() || rows.iter().any(|r| r.len() != nc) {
            return Err(Error::Dimension(format!(
                "matrix rows do not match {}x{}",
                target.ngens(),
                nc
            )));
        }
        Self::new(source, target, SparseMatrix::from_rows_i64(rows, nc))
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        Self::new_unchecked(g.clone(), g.clone(), SparseMatrix::identity(g.ngens()))
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        Self::new_unchecked(source.clone(), target.clone(), SparseMatrix::zero(target.ngens(), source.ngens()))
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        self.matrix.apply(x)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(other.target.ngens(), self.source.ngens(), "composition of mismatched homs");
        Self::new_unchecked(other.source.clone(), self.target.clone(), self.matrix.compose(&other.matrix))
    }

    pub fn add(&self, other: &GroupHom) -> GroupHom {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.add(&other.matrix))
    }

    pub fn sub(&self, other: &GroupHom) -> GroupHom {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.sub(&other.matrix))
    }

    pub fn neg(&self) -> GroupHom {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.neg())
    }

    pub fn scale(&self, c: &Int) -> GroupHom {
        Self::new_unchecked(self.source.clone(), self.target.clone(), self.matrix.scale(c))
    }

    /// Same matrix between different presentations of the generator sets.
    pub fn with_groups(&self, source: &FgAbGroup, target: &FgAbGroup) -> Result<GroupHom> {
        GroupHom::new(source.clone(), target.clone(), self.matrix.clone())
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.columns().iter().all(|c| self.target.is_zero_element(c))
    }

    pub fn equals(&self, other: &GroupHom) -> bool {
        self.sub(other).is_zero_map()
    }

    /// Full preimage of zero as a lattice in the source generators.
    pub fn kernel_lattice(&self) -> Echelon {
        let s = self.target.smith();
        let cols: Vec<SparseVec> = self.matrix.columns().iter().map(|c| s.to_diag.apply(c)).collect();
        let tors: Vec<SparseVec> = s
            .diag
            .iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero())
            .map(|(i, d)| SparseVec::single(i, d.clone()))
            .collect();
        let gens = kernel_modulo(&cols, &tors);
        Echelon::from_vectors(&gens)
    }

    pub fn kernel(&self) -> Kernel {
        let lat = self.kernel_lattice();
        let sq = Subquotient::new(&self.source, lat, &[]);
        let inclusion = GroupHom::new_unchecked(
            sq.group.clone(),
            self.source.clone(),
            SparseMatrix::from_columns(self.source.ngens(), sq.basis.clone()),
        );
        Kernel { sub: sq, inclusion }
    }

    /// `source ↠ image ↪ target`; the image is `source / ker`.
    pub fn image(&self) -> (FgAbGroup, GroupHom, GroupHom) {
        let lat = self.kernel_lattice();
        let img = FgAbGroup::new_unchecked(self.source.ngens(), lat.basis());
        let onto = GroupHom::new_unchecked(self.source.clone(), img.clone(), SparseMatrix::identity(img.ngens()));
        let into = GroupHom::new_unchecked(img.clone(), self.target.clone(), self.matrix.clone());
        (img, onto, into)
    }

    /// `target ↠ coker`
    pub fn cokernel(&self) -> (FgAbGroup, GroupHom) {
        let q = self.target.quotient_by(self.matrix.columns().iter().cloned());
        let proj = GroupHom::new_unchecked(self.target.clone(), q.clone(), SparseMatrix::identity(q.ngens()));
        (q, proj)
    }

    pub fn is_injective(&self) -> bool {
        let lat = self.kernel_lattice();
        lat.basis().iter().all(|b| self.source.is_zero_element(b))
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().0.is_trivial()
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    pub fn preimage_solver(&self) -> Preimage {
        Preimage::new(self)
    }

    /// Some `x` with `self(x) = y`, if one exists.
    pub fn preimage(&self, y: &SparseVec) -> Option<SparseVec> {
        self.preimage_solver().solve(y)
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_iso() {
            return None;
        }
        let solver = self.preimage_solver();
        let cols: Option<Vec<SparseVec>> =
            (0..self.target.ngens()).map(|j| solver.solve(&SparseVec::unit(j))).collect();
        Some(GroupHom::new_unchecked(
            self.target.clone(),
            self.source.clone(),
            SparseMatrix::from_columns(self.source.ngens(), cols?),
        ))
    }

    /// The hom `coker(a) → coker(b)` induced by `self` when `self ∘ a` lands
    /// in the image of `b` up to the target relations; matrix unchanged.
    pub fn on_quotients(&self, src: &FgAbGroup, tgt: &FgAbGroup) -> Result<GroupHom> {
        GroupHom::new(src.clone(), tgt.clone(), self.matrix.clone())
    }
}

/// Caches an echelon form for repeated preimage queries.
pub struct Preimage {
    target: FgAbGroup,
    echelon: Echelon,
    map: SparseMatrix,
}

impl Preimage {
    fn new(f: &GroupHom) -> Self {
        let s = f.target.smith();
        let mut e = Echelon::new();
        for (i, d) in s.diag.iter().enumerate() {
            if !d.is_zero() {
                e.insert(SparseVec::single(i, d.clone()), SparseVec::new());
            }
        }
        for (j, c) in f.matrix.columns().iter().enumerate() {
            e.insert(s.to_diag.apply(c), SparseVec::unit(j));
        }
        Preimage { target: f.target.clone(), echelon: e, map: f.matrix.clone() }
    }

    pub fn solve(&self, y: &SparseVec) -> Option<SparseVec> {
        let s = self.target.smith();
        let x = self.echelon.solve(&s.to_diag.apply(y))?;
        debug_assert!(self.target.elements_equal(&self.map.apply(&x), y));
        Some(x)
    }

    pub fn in_image(&self, y: &SparseVec) -> bool {
        self.solve(y).is_some()
    }
}

/// `ker ↪ source` together with the lattice description.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub sub: Subquotient,
    pub inclusion: GroupHom,
}

impl Kernel {
    pub fn group(&self) -> &FgAbGroup {
        &self.sub.group
    }
}

/// `L / M` where `L` is a lattice in the generators of an ambient group
/// containing its relators, and `M` is spanned by those relators plus extra
/// vectors of `L`. Group generators are the echelon basis of `L`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    pub lattice: Echelon,
    pub basis: Vec<SparseVec>,
    pub group: FgAbGroup,
    pub ambient_ngens: usize,
}

impl Subquotient {
    /// `lattice` must contain the relators of `ambient` and every vector of `extra`.
    pub fn new(ambient: &FgAbGroup, lattice: Echelon, extra: &[SparseVec]) -> Self {
        let basis = lattice.basis();
        let mut rels = Vec::new();
        for r in ambient.relations().iter().chain(extra) {
            let c = lattice.coordinates(r).expect("subquotient numerator must contain the denominator");
            rels.push(c);
        }
        let group = FgAbGroup::new_unchecked(basis.len(), rels);
        Subquotient { lattice, basis, group, ambient_ngens: ambient.ngens() }
    }

    /// Class of an ambient vector lying in the numerator lattice.
    pub fn class_of(&self, x: &SparseVec) -> Option<SparseVec> {
        self.lattice.coordinates(x)
    }

    /// Ambient representative of a class.
    pub fn lift(&self, c: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (k, a) in c.iter() {
            acc = acc.add_scaled(&self.basis[*k], a);
        }
        acc
    }

    /// Hom `self → other` induced by an ambient-level matrix mapping numerator
    /// into numerator and denominator into denominator.
    pub fn induced(&self, other: &Subquotient, ambient_map: &SparseMatrix) -> Result<GroupHom> {
        let mut cols = Vec::with_capacity(self.basis.len());
        for (k, b) in self.basis.iter().enumerate() {
            let img = ambient_map.apply(b);
            let c = other.class_of(&img).ok_or_else(|| {
                Error::IllDefined(format!("basis vector {k} does not map into the target numerator"))
            })?;
            cols.push(c);
        }
        GroupHom::new(
            self.group.clone(),
            other.group.clone(),
            SparseMatrix::from_columns(other.group.ngens(), cols),
        )
    }

    /// Hom from a plain group into this subquotient, given ambient images.
    pub fn induced_from(&self, source: &FgAbGroup, ambient_images: &SparseMatrix) -> Result<GroupHom> {
        let mut cols = Vec::with_capacity(source.ngens());
        for (k, v) in ambient_images.columns().iter().enumerate() {
            let c = self.class_of(v).ok_or_else(|| {
                Error::IllDefined(format!("generator {k} does not map into the subquotient numerator"))
            })?;
            cols.push(c);
        }
        GroupHom::new(source.clone(), self.group.clone(), SparseMatrix::from_columns(self.group.ngens(), cols))
    }

    /// Hom from this subquotient into a plain group, given the ambient matrix.
    pub fn induced_to(&self, target: &FgAbGroup, ambient_map: &SparseMatrix) -> Result<GroupHom> {
        let cols: Vec<SparseVec> = self.basis.iter().map(|b| ambient_map.apply(b)).collect();
        GroupHom::new(self.group.clone(), target.clone(), SparseMatrix::from_columns(target.ngens(), cols))
    }
}

/// Outcome of an exactness test at the middle of `A → B → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exactness {
    Exact,
    /// `g ∘ f ≠ 0`
    NotComplex,
    /// a kernel element of `g` outside the image of `f` (in generators of B)
    Gap(SparseVec),
}

impl Exactness {
    pub fn is_exact(&self) -> bool {
        matches!(self, Exactness::Exact)
    }
}

/// Exactness of `A --f--> B --g--> C` at `B`.
pub fn exact_at(f: &GroupHom, g: &GroupHom) -> Exactness {
    assert_eq!(f.target.ngens(), g.source.ngens(), "exactness test on non-composable maps");
    if !g.compose(f).is_zero_map() {
        return Exactness::NotComplex;
    }
    let solver = f.preimage_solver();
    for b in g.kernel_lattice().basis() {
        if f.target.is_zero_element(&b) {
            continue;
        }
        if !solver.in_image(&b) {
            return Exactness::Gap(b);
        }
    }
    Exactness::Exact
}

/// The three structural pieces of a homomorphism.
pub struct HomExactness {
    pub kernel: Kernel,
    pub image: FgAbGroup,
    pub onto_image: GroupHom,
    pub image_inclusion: GroupHom,
    pub cokernel: FgAbGroup,
    pub projection: GroupHom,
}

/// Kernel, image and cokernel of `f`, each with its structural maps, after
/// checking the composite identities.
pub fn hom_exactness(f: &GroupHom) -> Result<HomExactness> {
    let kernel = f.kernel();
    let (image, onto_image, image_inclusion) = f.image();
    let (cokernel, projection) = f.cokernel();
    let checks = [
        (f.compose(&kernel.inclusion).is_zero_map(), "f ∘ (ker ↪ source) ≠ 0"),
        (image_inclusion.compose(&onto_image).equals(f), "image factorisation differs from f"),
        (projection.compose(f).is_zero_map(), "(target ↠ coker) ∘ f ≠ 0"),
        (exact_at(&kernel.inclusion, &onto_image).is_exact(), "kernel is not the kernel of the image map"),
        (exact_at(&image_inclusion, &projection).is_exact(), "image is not the kernel of the cokernel map"),
        (kernel.inclusion.is_injective(), "kernel inclusion not injective"),
        (image_inclusion.is_injective(), "image inclusion not injective"),
    ];
    for (ok, what) in checks {
        if !ok {
            return Err(Error::Invariant(what.to_string()));
        }
    }
    Ok(HomExactness { kernel, image, onto_image, image_inclusion, cokernel, projection })
}
