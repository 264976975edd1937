//! Degreewise extensions `A^* → B^* → C^*` of 2-cochain complexes and their
//! long exact sequence in `H_U`.

use super::complex::TwoCochainComplex;
use super::cone::{Cone, PaddedComplex};
use super::morphism::ComplexMor;
use super::sequence::LongSequence;
use crate::error::{Error, Result};
use crate::fgab::{AbCochainComplex, FgAbGroup, GroupHom, SparseMatrix, SparseVec};
use crate::picard::kernel::{comparison_to_kernel, kernel, two_exact};
use crate::picard::{StrictMor, Track};

#[derive(Clone, Debug)]
pub struct ComplexExtension {
    pub i: ComplexMor,
    pub p: ComplexMor,
    lo: i64,
    /// `α^n: 0 ⇒ p^n i^n`, one homomorphism `C0_A^n → C1_C^n` per degree
    alphas: Vec<SparseMatrix>,
}

/// Per-degree extension checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCheck {
    pub degree: i64,
    pub two_exact: bool,
    /// `A^n → Ker p^n` is an equivalence
    pub kernel_equivalence: bool,
    pub cofaithful: bool,
}

impl DegreeCheck {
    pub fn ok(&self) -> bool {
        self.two_exact && self.kernel_equivalence && self.cofaithful
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionLes {
    pub sequence: LongSequence,
    pub degrees: Vec<DegreeCheck>,
    /// connecting maps `H^n_U(C) → H^{n+1}_U(A)` by degree
    pub connecting: Vec<(i64, GroupHom)>,
}

impl ComplexExtension {
    pub fn new(i: ComplexMor, p: ComplexMor, lo: i64, alphas: Vec<SparseMatrix>) -> Result<Self> {
        let e = ComplexExtension { i, p, lo, alphas };
        e.validate()?;
        Ok(e)
    }

    fn span(&self) -> (i64, i64) {
        let cs = [self.i.source(), self.i.target(), self.p.target()];
        (cs.iter().map(|c| c.lo()).min().unwrap(), cs.iter().map(|c| c.hi()).max().unwrap())
    }

    pub fn alpha(&self, n: i64) -> SparseMatrix {
        let k = n - self.lo;
        if k >= 0 && (k as usize) < self.alphas.len() {
            self.alphas[k as usize].clone()
        } else {
            SparseMatrix::zero(self.p.target().object(n).c1().ngens(), self.i.source().object(n).c0().ngens())
        }
    }

    fn alpha_track(&self, n: i64) -> Result<Track> {
        let pi = self.p.map(n).compose(&self.i.map(n));
        let zero = StrictMor::zero(self.i.source().object(n), self.p.target().object(n));
        Track::new(&zero, &pi, self.alpha(n)).map_err(|e| Error::Invariant(format!("α^{n}: {e}")))
    }

    fn validate(&self) -> Result<()> {
        let (lo, hi) = self.span();
        for n in lo..=hi {
            let (b, b2) = (self.i.target().object(n), self.p.source().object(n));
            if b.c0().ngens() != b2.c0().ngens() || b.c1().ngens() != b2.c1().ngens() {
                return Err(Error::Dimension(format!("i and p do not share the middle complex in degree {n}")));
            }
            self.alpha_track(n)?;
        }
        let c = self.p.target();
        let a = self.i.source();
        for n in lo - 1..=hi {
            // d_{C,1} α^n - α^{n+1} d_{A,0} = p_1 τ_i + τ_p i_0
            let lhs = c.diff(n).f1().compose(&self.alpha(n)).sub(&self.alpha(n + 1).compose(a.diff(n).f0()));
            let rhs = self.p.map(n + 1).f1().compose(&self.i.tau(n)).add(&self.p.tau(n).compose(self.i.map(n).f0()));
            let g = c.object(n + 1).c1();
            if !lhs.sub(&rhs).columns().iter().all(|v| g.is_zero_element(v)) {
                return Err(Error::Invariant(format!("α is not compatible with the differentials in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn degree_checks(&self) -> Result<Vec<DegreeCheck>> {
        let (lo, hi) = self.span();
        let mut out = Vec::new();
        for n in lo..=hi {
            let (i, p) = (self.i.map(n), self.p.map(n));
            let t = self.alpha_track(n)?;
            let (cmp, _) = comparison_to_kernel(&i, &p, &t)?;
            out.push(DegreeCheck {
                degree: n,
                two_exact: two_exact(&i, &p, &t)?,
                kernel_equivalence: cmp.on_pi0().is_iso() && cmp.on_pi1().is_iso(),
                cofaithful: p.on_pi0().is_surjective(),
            });
        }
        Ok(out)
    }

    /// `Fib^n = T_B^n ⊕ T_C^{n-1}` with `D(x, y) = (D_B x, Φ_p x - D_C y)`.
    fn fiber(&self, cb: &Cone, cc: &Cone) -> PaddedComplex {
        let (lo, hi) = self.span();
        let (flo, fhi) = (lo - 2, hi + 2);
        let groups: Vec<FgAbGroup> =
            (flo..=fhi).map(|n| FgAbGroup::direct_sum(&[&cb.group(n), &cc.group(n - 1)])).collect();
        let diffs = (flo..fhi)
            .map(|n| {
                let db = cb.complex.differential(n);
                let dc = cc.complex.differential(n - 1);
                let zero = SparseMatrix::zero(cb.group(n + 1).ngens(), cc.group(n - 1).ngens());
                let top = SparseMatrix::hstack(db.matrix(), &zero);
                let bottom = SparseMatrix::hstack(&self.p.cone_matrix(n), &dc.matrix().neg());
                let k = (n - flo) as usize;
                GroupHom::new(groups[k].clone(), groups[k + 1].clone(), SparseMatrix::vstack(&top, &bottom))
                    .expect("fiber differential is well defined")
            })
            .collect();
        PaddedComplex { inner: AbCochainComplex::new(flo, groups, diffs).expect("fiber differential squares to zero") }
    }

    /// `(a, m) ↦ (Φ_i(a, m), (0, -α^n a))`.
    fn psi_matrix(&self, ca: &Cone, cc: &Cone, n: i64) -> SparseMatrix {
        let top = self.i.cone_matrix(n);
        let na = ca.group(n).ngens();
        let split_a = ca.split(n);
        let c_prev0 = cc.split(n - 1);
        let alpha = self.alpha(n).neg();
        let rows = cc.group(n - 1).ngens();
        let cols: Vec<SparseVec> = (0..na)
            .map(|k| if k < split_a { alpha.col(k).shifted(c_prev0) } else { SparseVec::new() })
            .collect();
        SparseMatrix::vstack(&top, &SparseMatrix::from_columns(rows, cols))
    }

    pub fn long_exact_sequence(&self) -> Result<ExtensionLes> {
        let degrees = self.degree_checks()?;
        let (ca, cb, cc) = (Cone::new(self.i.source()), Cone::new(self.i.target()), Cone::new(self.p.target()));
        let fib = self.fiber(&cb, &cc);
        let (lo, hi) = self.span();
        let psi_inv = |n: i64| -> Result<GroupHom> {
            let psi = ca
                .subquotient(n)
                .induced(&fib.subquotient(n), &self.psi_matrix(&ca, &cc, n))
                .map_err(|e| Error::Invariant(format!("ψ^{n}: {e}")))?;
            psi.inverse()
                .ok_or_else(|| Error::Invariant(format!("A^* → fiber is not an isomorphism on H^{n}_U")))
        };
        let mut labels = Vec::new();
        let mut groups = Vec::new();
        let mut maps = Vec::new();
        let mut connecting = Vec::new();
        for n in lo - 2..=hi + 1 {
            labels.push(format!("H^{n}_U(A)"));
            groups.push(ca.subquotient(n).group);
            maps.push(self.i.on_tu_with(&ca, &cb, n));
            labels.push(format!("H^{n}_U(B)"));
            groups.push(cb.subquotient(n).group);
            maps.push(self.p.on_tu_with(&cb, &cc, n));
            labels.push(format!("H^{n}_U(C)"));
            groups.push(cc.subquotient(n).group);
            let hc = cc.subquotient(n);
            let offset = cb.group(n + 1).ngens();
            let images: Vec<SparseVec> = hc.basis.iter().map(|y| y.shifted(offset)).collect();
            let into_fib = fib
                .subquotient(n + 1)
                .induced_from(&hc.group, &SparseMatrix::from_columns(fib.group(n + 1).ngens(), images))
                .map_err(|e| Error::Invariant(format!("connecting map in degree {n}: {e}")))?;
            let delta = psi_inv(n + 1)?.compose(&into_fib);
            connecting.push((n, delta.clone()));
            maps.push(delta);
        }
        labels.push(format!("H^{}_U(A)", hi + 2));
        groups.push(ca.subquotient(hi + 2).group);
        Ok(ExtensionLes { sequence: LongSequence::new(labels, groups, maps), degrees, connecting })
    }
}

/// The kernel extension `Ker p → B^* → C^*` of a strictly commuting `p`.
pub fn kernel_extension(p: &ComplexMor) -> Result<ComplexExtension> {
    let (b, c) = (p.source(), p.target());
    let lo = b.lo().min(c.lo());
    let hi = b.hi().max(c.hi());
    for n in lo - 1..=hi + 1 {
        if !p.tau(n).is_zero() {
            return Err(Error::Input(format!("kernel extension needs a strictly commuting morphism (τ^{n} ≠ 0)")));
        }
    }
    let ks: Vec<_> = (lo..=hi).map(|n| kernel(&p.map(n))).collect();
    let objects: Vec<_> = ks.iter().map(|k| k.group.clone()).collect();
    let mut diffs = Vec::new();
    for n in lo..hi {
        let (k0, k1) = (&ks[(n - lo) as usize], &ks[(n - lo + 1) as usize]);
        let first = k0.objects.first();
        let second = k0.objects.second();
        let cols: Vec<SparseVec> = (0..k0.group.c0().ngens())
            .map(|j| {
                let bb = b.diff(n).f0().apply(first.col(j));
                let mm = c.diff(n).f1().apply(second.col(j));
                k1.objects.class_of(&bb, &mm).expect("differential preserves kernel objects")
            })
            .collect();
        diffs.push(StrictMor::new_unchecked(
            &k0.group,
            &k1.group,
            b.diff(n).f1().clone(),
            SparseMatrix::from_columns(k1.group.c0().ngens(), cols),
            false,
        ));
    }
    let tracks = (lo..hi - 1).map(|n| b.track(n).compose(&ks[(n - lo) as usize].objects.first())).collect();
    let a = TwoCochainComplex::new(lo, objects, diffs, tracks)?;
    let incl = ks.iter().map(|k| k.inclusion.clone()).collect();
    let i = ComplexMor::strict(&a, b, lo, incl)?;
    let alphas = ks.iter().map(|k| k.objects.second()).collect();
    ComplexExtension::new(i, p.clone(), lo, alphas)
}
