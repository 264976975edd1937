//! The 2-group of strict morphisms out of the generator `Φ`.

use super::kernel::PairObjects;
use super::pic::Pic2Group;
use crate::fgab::{FgAbGroup, GroupHom, Int, SparseMatrix, SparseVec, Subquotient};

/// Strict morphisms `Φ → P` and tracks between them, as a 2-group.
///
/// A strict morphism is a pair `(x, y) = (f0(1), f1(1))` with `d y = 0`,
/// `2y = 0` and `y = β(x, x)`; a track `0 ⇒ f` is `m ∈ C1` with `d m = x`.
pub fn hom_from_phi(p: &Pic2Group) -> Pic2Group {
    let (c0, c1) = (p.c0(), p.c1());
    let (n0, n1) = (c0.ngens(), c1.ngens());
    let ambient = FgAbGroup::direct_sum(&[c0, c1]);
    let target = FgAbGroup::direct_sum(&[c0, c1, c1]);
    let q = p.q_matrix();
    let two = Int::from(2);
    let mut cols = Vec::with_capacity(n0 + n1);
    for i in 0..n0 {
        cols.push(q.col(i).neg().shifted(n0));
    }
    for k in 0..n1 {
        let e = SparseVec::unit(k);
        cols.push(
            p.d().matrix().col(k).add(&e.shifted(n0)).add(&e.scale(&two).shifted(n0 + n1)),
        );
    }
    let constraint =
        GroupHom::new_unchecked(ambient.clone(), target.clone(), SparseMatrix::from_columns(target.ngens(), cols));
    let objects = PairObjects { sub: Subquotient::new(&ambient, constraint.kernel_lattice(), &[]), split: n0 };
    let h0 = objects.sub.group.clone();
    let dcols: Vec<SparseVec> = (0..n1)
        .map(|k| {
            objects
                .class_of(p.d().matrix().col(k), &SparseVec::new())
                .expect("(d m, 0) is a strict morphism")
        })
        .collect();
    let d = GroupHom::new_unchecked(c1.clone(), h0.clone(), SparseMatrix::from_columns(h0.ngens(), dcols));
    let braid = p.braiding().pullback(&objects.first());
    Pic2Group::from_parts(c1.clone(), h0, d, braid)
}
