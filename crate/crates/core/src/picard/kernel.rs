//! Kernels, cokernels, their relative versions, and the six-term sequence.

use super::morphism::{StrictMor, Track};
use super::pic::Pic2Group;
use crate::error::{Error, Result};
use crate::fgab::{exact_at, FgAbGroup, GroupHom, SparseMatrix, SparseVec, Subquotient};

/// Objects of a kernel-type 2-group: pairs `(a, m)` inside `C0^A ⊕ C1^B`.
#[derive(Clone, Debug)]
pub struct PairObjects {
    pub sub: Subquotient,
    /// number of generators of the first summand
    pub split: usize,
}

impl PairObjects {
    /// First components of the basis pairs, as a matrix `C0^K → C0^A`.
    pub fn first(&self) -> SparseMatrix {
        let cols = self.sub.basis.iter().map(|b| b.window(0, self.split)).collect();
        SparseMatrix::from_columns(self.split, cols)
    }

    /// Second components, as a matrix `C0^K → C1^B`.
    pub fn second(&self) -> SparseMatrix {
        let n = self.sub.ambient_ngens - self.split;
        let cols = self.sub.basis.iter().map(|b| b.window(self.split, self.sub.ambient_ngens)).collect();
        SparseMatrix::from_columns(n, cols)
    }

    /// Class of the pair `(a, m)`.
    pub fn class_of(&self, a: &SparseVec, m: &SparseVec) -> Option<SparseVec> {
        self.sub.class_of(&a.add(&m.shifted(self.split)))
    }
}

#[derive(Clone, Debug)]
pub struct KernelData {
    pub group: Pic2Group,
    /// `k_f: Ker f → A`
    pub inclusion: StrictMor,
    /// `κ_f: 0 ⇒ f ∘ k_f`
    pub track: Track,
    pub objects: PairObjects,
}

#[derive(Clone, Debug)]
pub struct CokernelData {
    pub group: Pic2Group,
    /// `p_f: B → Coker f`
    pub projection: StrictMor,
    /// `0 ⇒ p_f ∘ f`
    pub track: Track,
}

/// Pairs `(a, m) ∈ C0^A ⊕ C1^B` with `d m = f0 a` and `g1 m = t a`, where
/// `g1: C1^B → C1^C` and `t: C0^A → C1^C`. Morphisms are `C1^A` with
/// `d(γ) = (dγ, f1 γ)`.
fn pair_kernel(f: &StrictMor, c1_c: &FgAbGroup, g1: &SparseMatrix, t: &SparseMatrix) -> (Pic2Group, PairObjects) {
    let (a, b) = (f.source(), f.target());
    let (na0, nb1) = (a.c0().ngens(), b.c1().ngens());
    let ambient = FgAbGroup::direct_sum(&[a.c0(), b.c1()]);
    let constraint_target = FgAbGroup::direct_sum(&[b.c0(), c1_c]);
    let nb0 = b.c0().ngens();
    let mut cols = Vec::with_capacity(na0 + nb1);
    for j in 0..na0 {
        cols.push(f.f0().col(j).add(&t.col(j).neg().shifted(nb0)));
    }
    for k in 0..nb1 {
        cols.push(b.d().matrix().col(k).neg().add(&g1.col(k).shifted(nb0)));
    }
    let constraint = GroupHom::new_unchecked(
        ambient.clone(),
        constraint_target.clone(),
        SparseMatrix::from_columns(constraint_target.ngens(), cols),
    );
    let sub = Subquotient::new(&ambient, constraint.kernel_lattice(), &[]);
    let objects = PairObjects { sub, split: na0 };
    let c0k = objects.sub.group.clone();
    let dcols: Vec<SparseVec> = (0..a.c1().ngens())
        .map(|g| {
            objects
                .class_of(a.d().matrix().col(g), f.f1().col(g))
                .expect("(dγ, f1 γ) satisfies the pair constraints")
        })
        .collect();
    let d = GroupHom::new_unchecked(a.c1().clone(), c0k.clone(), SparseMatrix::from_columns(c0k.ngens(), dcols));
    let proj = objects.first();
    let group = if f.known_braided() {
        let braid = a.braiding().pullback(&proj);
        Pic2Group::from_parts(a.c1().clone(), c0k, d, braid)
    } else {
        let q = a.q_matrix().compose(&proj);
        Pic2Group::realize(a.c1().clone(), c0k, d, &q)
    };
    (group, objects)
}

/// Kernel of `f: A → B` with `k_f` and `κ_f`.
pub fn kernel(f: &StrictMor) -> KernelData {
    let zero = FgAbGroup::zero();
    let nb1 = f.target().c1().ngens();
    let na0 = f.source().c0().ngens();
    let (group, objects) =
        pair_kernel(f, &zero, &SparseMatrix::zero(0, nb1), &SparseMatrix::zero(0, na0));
    let a = f.source();
    let inclusion = StrictMor::new_unchecked(
        &group,
        a,
        SparseMatrix::identity(a.c1().ngens()),
        objects.first(),
        f.known_braided(),
    );
    let fk = f.compose(&inclusion);
    let track = Track::new_unchecked(&StrictMor::zero(&group, f.target()), &fk, objects.second());
    KernelData { group, inclusion, track, objects }
}

/// Relative kernel of `f: A → B` with respect to `g: B → C` and `α: 0 ⇒ g f`:
/// the kernel of the induced morphism `Ker f → ΩC`.
pub fn relative_kernel(f: &StrictMor, g: &StrictMor, alpha: &Track) -> Result<(Pic2Group, PairObjects)> {
    check_relative(f, g, alpha)?;
    Ok(relative_kernel_raw(f, g.target().c1(), g.f1(), alpha.matrix()))
}

pub(crate) fn relative_kernel_raw(
    f: &StrictMor,
    c1_c: &FgAbGroup,
    g1: &SparseMatrix,
    t: &SparseMatrix,
) -> (Pic2Group, PairObjects) {
    pair_kernel(f, c1_c, g1, t)
}

fn check_relative(f: &StrictMor, g: &StrictMor, alpha: &Track) -> Result<()> {
    if f.target().c0().ngens() != g.source().c0().ngens() || f.target().c1().ngens() != g.source().c1().ngens() {
        return Err(Error::Dimension("f and g are not composable".into()));
    }
    let gf = g.compose(f);
    Track::new(&StrictMor::zero(f.source(), g.target()), &gf, alpha.matrix().clone())
        .map_err(|e| Error::Invariant(format!("relative data: {e}")))?;
    Ok(())
}

/// Cokernel of `f: A → B`: objects `C0^B`, morphisms
/// `(C1^B ⊕ C0^A) / ⟨(-f1 γ, dγ)⟩`, `d(m, a) = d m + f0 a`.
pub fn cokernel(f: &StrictMor) -> CokernelData {
    cokernel_from_group(f, cokernel_like(f, None))
}

fn cokernel_from_group(f: &StrictMor, group: Pic2Group) -> CokernelData {
    let (a, b) = (f.source(), f.target());
    let nb1 = b.c1().ngens();
    let incl: Vec<SparseVec> = (0..nb1).map(SparseVec::unit).collect();
    let projection = StrictMor::new_unchecked(
        b,
        &group,
        SparseMatrix::from_columns(group.c1().ngens(), incl),
        SparseMatrix::identity(b.c0().ngens()),
        false,
    );
    let tcols: Vec<SparseVec> = (0..a.c0().ngens()).map(|j| SparseVec::unit(nb1 + j)).collect();
    let pf = projection.compose(f);
    let track = Track::new_unchecked(
        &StrictMor::zero(a, &group),
        &pf,
        SparseMatrix::from_columns(group.c1().ngens(), tcols),
    );
    CokernelData { group, projection, track }
}

/// `C1 = (C1^C ⊕ C0^B) / ⟨(-g1 μ, d μ), (t a, -f0 a)⟩`, `C0 = C0^C`,
/// `d(m, b) = d m + g0 b`, braiding realized from `q^C`. Without `rel` the
/// `(t a, -f0 a)` relators are absent and this is the plain cokernel of `g`.
fn cokernel_like(g: &StrictMor, rel: Option<(&StrictMor, &SparseMatrix)>) -> Pic2Group {
    let (b, c) = (g.source(), g.target());
    let (nc1, nb0) = (c.c1().ngens(), b.c0().ngens());
    let mut rels: Vec<SparseVec> = Vec::new();
    rels.extend(c.c1().relations().iter().cloned());
    rels.extend(b.c0().relations().iter().map(|r| r.shifted(nc1)));
    for mu in 0..b.c1().ngens() {
        rels.push(g.f1().col(mu).neg().add(&b.d().matrix().col(mu).shifted(nc1)));
    }
    if let Some((f, t)) = rel {
        for a in 0..f.source().c0().ngens() {
            rels.push(t.col(a).add(&f.f0().col(a).neg().shifted(nc1)));
        }
    }
    let c1 = FgAbGroup::new_unchecked(nc1 + nb0, rels);
    let c0 = c.c0().clone();
    let dm = SparseMatrix::hstack(c.d().matrix(), g.f0());
    let d = GroupHom::new_unchecked(c1.clone(), c0.clone(), dm);
    let q = SparseMatrix::from_columns(nc1 + nb0, c.q_matrix().columns().to_vec());
    Pic2Group::realize(c1, c0, d, &q)
}

/// Relative cokernel of `g: B → C` with respect to `f: A → B` and
/// `α: 0 ⇒ g f`: the cokernel of the induced morphism `ΣA → Coker g`.
pub fn relative_cokernel(f: &StrictMor, g: &StrictMor, alpha: &Track) -> Result<Pic2Group> {
    check_relative(f, g, alpha)?;
    Ok(cokernel_like(g, Some((f, alpha.matrix()))))
}

pub(crate) fn relative_cokernel_unchecked(f: &StrictMor, g: &StrictMor, t: &SparseMatrix) -> Pic2Group {
    cokernel_like(g, Some((f, t)))
}

/// `0 → π^{-1}Ker f → π^{-1}A → π^{-1}B → π^0 Ker f → π^0 A → π^0 B`.
#[derive(Clone, Debug)]
pub struct GzSequence {
    pub groups: Vec<FgAbGroup>,
    pub maps: Vec<GroupHom>,
    /// injectivity at `π^{-1}Ker f`, then exactness at the four interior spots
    pub exact: Vec<bool>,
}

impl GzSequence {
    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|b| *b)
    }

    pub const SPOTS: [&'static str; 5] = ["pi1(Ker f)", "pi1(A)", "pi1(B)", "pi0(Ker f)", "pi0(A)"];
}

pub fn gz_sequence(f: &StrictMor) -> GzSequence {
    let k = kernel(f);
    let (a, b) = (f.source(), f.target());
    let m1 = k.inclusion.on_pi1();
    let m2 = f.on_pi1();
    let conn_images: Vec<SparseVec> =
        b.pi1_sub().basis.iter().map(|m| m.shifted(a.c0().ngens())).collect();
    let conn = k
        .objects
        .sub
        .induced_from(b.pi1(), &SparseMatrix::from_columns(k.objects.sub.ambient_ngens, conn_images))
        .expect("cycles of B pair with zero objects");
    let m3 = GroupHom::new_unchecked(b.pi1().clone(), k.group.pi0().clone(), conn.matrix().clone());
    let m4 = k.inclusion.on_pi0();
    let m5 = f.on_pi0();
    let exact = vec![
        m1.is_injective(),
        exact_at(&m1, &m2).is_exact(),
        exact_at(&m2, &m3).is_exact(),
        exact_at(&m3, &m4).is_exact(),
        exact_at(&m4, &m5).is_exact(),
    ];
    GzSequence {
        groups: vec![
            k.group.pi1().clone(),
            a.pi1().clone(),
            b.pi1().clone(),
            k.group.pi0().clone(),
            a.pi0().clone(),
            b.pi0().clone(),
        ],
        maps: vec![m1, m2, m3, m4, m5],
        exact,
    }
}

/// The comparison `A → Ker g` determined by `f` and `α: 0 ⇒ g f`.
pub fn comparison_to_kernel(f: &StrictMor, g: &StrictMor, alpha: &Track) -> Result<(StrictMor, KernelData)> {
    check_relative(f, g, alpha)?;
    let k = kernel(g);
    let a = f.source();
    let mut cols = Vec::with_capacity(a.c0().ngens());
    for j in 0..a.c0().ngens() {
        let c = k
            .objects
            .class_of(f.f0().col(j), alpha.matrix().col(j))
            .ok_or_else(|| Error::Invariant(format!("(f0 e{j}, α e{j}) is not an object of Ker g")))?;
        cols.push(c);
    }
    let m = StrictMor::new_unchecked(
        a,
        &k.group,
        f.f1().clone(),
        SparseMatrix::from_columns(k.group.c0().ngens(), cols),
        false,
    );
    Ok((m, k))
}

/// `A → B → C` with `α: 0 ⇒ g f` is 2-exact at `B` when `A → Ker g` is
/// bijective on `π^0` and surjective on `π^{-1}`.
pub fn two_exact(f: &StrictMor, g: &StrictMor, alpha: &Track) -> Result<bool> {
    let (m, _) = comparison_to_kernel(f, g, alpha)?;
    Ok(m.on_pi0().is_iso() && m.on_pi1().is_surjective())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::Int;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| Int::from(*x)).collect()
    }

    fn phi_times_two() -> StrictMor {
        let p = Pic2Group::phi();
        StrictMor::new(&p, &p, SparseMatrix::zero(1, 1), SparseMatrix::from_rows_i64(&[vec![2]], 1)).unwrap()
    }

    #[test]
    fn kernel_of_times_two() {
        let k = kernel(&phi_times_two());
        k.group.validate().unwrap();
        assert_eq!(k.group.pi0().invariants(), ints(&[2]));
        assert_eq!(k.group.pi1().invariants(), ints(&[2]));
    }

    #[test]
    fn cokernel_of_times_two() {
        let c = cokernel(&phi_times_two());
        c.group.validate().unwrap();
        assert_eq!(c.group.pi0().invariants(), ints(&[2]));
        assert_eq!(c.group.pi1().invariants(), ints(&[2]));
    }

    #[test]
    fn kernel_of_zero_into_p_is_loop() {
        let p = Pic2Group::phi();
        let f = StrictMor::zero(&Pic2Group::zero(), &p);
        let k = kernel(&f);
        assert_eq!(k.group.qdata(), p.loop_group().qdata());
    }

    #[test]
    fn gz_identity_and_times_two() {
        let s = gz_sequence(&StrictMor::identity(&Pic2Group::phi()));
        assert!(s.is_exact());
        let inv: Vec<_> = s.groups.iter().map(|g| g.invariants()).collect();
        assert_eq!(inv, vec![ints(&[]), ints(&[2]), ints(&[2]), ints(&[]), ints(&[0]), ints(&[0])]);

        let s = gz_sequence(&phi_times_two());
        assert!(s.is_exact());
        let inv: Vec<_> = s.groups.iter().map(|g| g.invariants()).collect();
        assert_eq!(inv, vec![ints(&[2]), ints(&[2]), ints(&[2]), ints(&[2]), ints(&[0]), ints(&[0])]);
        assert!(s.maps[1].is_zero_map());
    }

    #[test]
    fn gz_zero_map() {
        let p = Pic2Group::phi();
        let s = gz_sequence(&StrictMor::zero(&p, &p));
        assert!(s.is_exact());
        assert_eq!(s.groups[3].invariants(), ints(&[2, 0]));
    }

    #[test]
    fn relative_kernel_degenerate() {
        let f = phi_times_two();
        let c = Pic2Group::phi();
        let g = StrictMor::zero(f.target(), &c);
        let alpha = Track::identity(&StrictMor::zero(f.source(), &c));
        let (rk, _) = relative_kernel(&f, &g, &alpha).unwrap();
        assert_eq!(rk.qdata(), kernel(&f).group.qdata());
    }

    #[test]
    fn relative_cokernel_degenerate() {
        let a = Pic2Group::phi();
        let zero = Pic2Group::zero();
        let f = StrictMor::zero(&zero, &zero);
        let g = StrictMor::zero(&zero, &a);
        let alpha = Track::identity(&StrictMor::zero(&zero, &a));
        let rc = relative_cokernel(&f, &g, &alpha).unwrap();
        assert_eq!(rc.qdata(), a.qdata());
    }

    #[test]
    fn kernel_sequence_is_two_exact() {
        let f = phi_times_two();
        let k = kernel(&f);
        assert!(two_exact(&k.inclusion, &f, &k.track).unwrap());
        let p = Pic2Group::phi();
        let id = StrictMor::identity(&p);
        let z = StrictMor::zero(&p, &Pic2Group::zero());
        assert!(two_exact(&id, &z, &Track::identity(&StrictMor::zero(&p, &Pic2Group::zero()))).unwrap());
    }
}
