//! Homotopy-group complexes and the sequence
//! `… → H^{n+1}(π^{-1}) → H^n_U → H^n(π^0) → H^{n+2}(π^{-1}) → …`.

use super::complex::TwoCochainComplex;
use super::cone::{Cone, PaddedComplex};
use super::sequence::LongSequence;
use crate::fgab::{AbCochainComplex, GroupHom, SparseMatrix, SparseVec};

const PAD: i64 = 3;

/// `π^0 A^*` with the induced differentials, padded by zeros.
pub fn pi0_complex(c: &TwoCochainComplex) -> PaddedComplex {
    let (lo, hi) = (c.lo() - PAD, c.hi() + PAD);
    let groups = (lo..=hi).map(|n| c.object(n).pi0().clone()).collect();
    let diffs = (lo..hi).map(|n| c.diff(n).on_pi0()).collect();
    PaddedComplex { inner: AbCochainComplex::new(lo, groups, diffs).expect("π^0 of a 2-cochain complex is a complex") }
}

/// `π^{-1} A^*` with the induced differentials, padded by zeros.
pub fn pi1_complex(c: &TwoCochainComplex) -> PaddedComplex {
    let (lo, hi) = (c.lo() - PAD, c.hi() + PAD);
    let groups = (lo..=hi).map(|n| c.object(n).pi1().clone()).collect();
    let diffs = (lo..hi).map(|n| c.diff(n).on_pi1()).collect();
    PaddedComplex { inner: AbCochainComplex::new(lo, groups, diffs).expect("π^{-1} of a 2-cochain complex is a complex") }
}

/// `H^{n+1}(π^{-1}) → H^n_U`, `m ↦ (0, m)`.
fn from_pi1(c: &TwoCochainComplex, cone: &Cone, p1: &PaddedComplex, n: i64) -> GroupHom {
    let src = p1.subquotient(n + 1);
    let tgt = cone.subquotient(n);
    let split = cone.split(n);
    let basis = &c.object(n + 1).pi1_sub().basis;
    let cols: Vec<SparseVec> = basis.iter().map(|b| b.shifted(split)).collect();
    src.induced(&tgt, &SparseMatrix::from_columns(cone.group(n).ngens(), cols)).expect("(0, m) is a cone cocycle")
}

/// `H^n_U → H^n(π^0)`, `(a, m) ↦ [a]`.
fn to_pi0(c: &TwoCochainComplex, cone: &Cone, p0: &PaddedComplex, n: i64) -> GroupHom {
    let src = cone.subquotient(n);
    let tgt = p0.subquotient(n);
    let n0 = c.object(n).c0().ngens();
    let cols: Vec<SparseVec> = (0..cone.group(n).ngens())
        .map(|k| if k < n0 { SparseVec::unit(k) } else { SparseVec::new() })
        .collect();
    src.induced(&tgt, &SparseMatrix::from_columns(n0, cols)).expect("projection of a cone cocycle is a π^0 cocycle")
}

/// `H^n(π^0) → H^{n+2}(π^{-1})`, `[a] ↦ [-(s^n a + d^{n+1}_1 m)]` with `d m = d^n_0 a`.
pub fn tu_connecting(c: &TwoCochainComplex, p0: &PaddedComplex, p1: &PaddedComplex, n: i64) -> GroupHom {
    let src = p0.subquotient(n);
    let tgt = p1.subquotient(n + 2);
    let a1 = c.object(n + 1);
    let a2 = c.object(n + 2);
    let d = c.diff(n);
    let s = c.track(n);
    let d1 = c.diff(n + 1);
    let solver = a1.d().preimage_solver();
    let cols: Vec<SparseVec> = src
        .basis
        .iter()
        .map(|a| {
            let m = solver.solve(&d.f0().apply(a)).expect("π^0 cocycle lifts through d");
            let v = s.apply(a).add(&d1.f1().apply(&m)).neg();
            let inner = a2.pi1_sub().class_of(&v).expect("connecting value lies in ker d");
            tgt.class_of(&inner).expect("connecting value is a π^{-1} cocycle")
        })
        .collect();
    GroupHom::new(src.group.clone(), tgt.group.clone(), SparseMatrix::from_columns(tgt.group.ngens(), cols))
        .expect("connecting map is well defined")
}

/// The sequence from degree `lo - 2` through `hi`, ending at `H^{hi+2}(π^{-1})`.
pub fn tu_sequence(c: &TwoCochainComplex) -> LongSequence {
    let cone = Cone::new(c);
    let p0 = pi0_complex(c);
    let p1 = pi1_complex(c);
    let mut labels = Vec::new();
    let mut groups = Vec::new();
    let mut maps = Vec::new();
    for n in c.lo() - 2..=c.hi() {
        labels.push(format!("H^{}(pi1)", n + 1));
        groups.push(p1.cohomology(n + 1));
        maps.push(from_pi1(c, &cone, &p1, n));
        labels.push(format!("H^{n}_U"));
        groups.push(cone.subquotient(n).group);
        maps.push(to_pi0(c, &cone, &p0, n));
        labels.push(format!("H^{n}(pi0)"));
        groups.push(p0.cohomology(n));
        maps.push(tu_connecting(c, &p0, &p1, n));
    }
    labels.push(format!("H^{}(pi1)", c.hi() + 2));
    groups.push(p1.cohomology(c.hi() + 2));
    LongSequence::new(labels, groups, maps)
}
