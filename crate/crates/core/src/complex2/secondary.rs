//! Secondary cohomology 2-groups `𝐇^n`, built from relative kernels and
//! cokernels of the differentials.

use super::complex::TwoCochainComplex;
use crate::fgab::{SparseMatrix, SparseVec};
use crate::picard::kernel::{relative_cokernel_unchecked, relative_kernel_raw};
use crate::picard::{Pic2Group, StrictMor};

/// `𝐇^n`: the relative cokernel of `A^{n-2} → A^{n-1} → RK^n`, where `RK^n`
/// is the relative kernel of `d^n` with respect to `d^{n+1}` and `∂^n`.
pub fn secondary_cohomology(c: &TwoCochainComplex, n: i64) -> Pic2Group {
    let dn = c.diff(n);
    let (rk, objects) = relative_kernel_raw(&dn, c.object(n + 2).c1(), c.diff(n + 1).f1(), &c.track(n).neg());
    let prev = c.diff(n - 1);
    let sprev = c.track(n - 1);
    let a_prev = c.object(n - 1);
    let cols: Vec<SparseVec> = (0..a_prev.c0().ngens())
        .map(|j| {
            objects
                .class_of(prev.f0().col(j), &sprev.col(j).neg())
                .expect("(d a, -s a) lies in the relative kernel")
        })
        .collect();
    let dprime = StrictMor::new_unchecked(
        a_prev,
        &rk,
        prev.f1().clone(),
        SparseMatrix::from_columns(rk.c0().ngens(), cols),
        false,
    );
    relative_cokernel_unchecked(&c.diff(n - 2), &dprime, &c.track(n - 2).neg())
}

/// `𝐇^n` for every `n` in `lo..=hi`.
pub fn secondary_range(c: &TwoCochainComplex, lo: i64, hi: i64) -> Vec<(i64, Pic2Group)> {
    (lo..=hi).map(|n| (n, secondary_cohomology(c, n))).collect()
}
