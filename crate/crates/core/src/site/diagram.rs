//! Precosimplicial diagrams `[n] ↦ ∏_t P(U_t)` over tuple nerves.

use super::cover::TupleNerve;
use crate::cosimplicial::PrecosimplicialPic;
use crate::error::{Error, Result};
use crate::fgab::{SparseMatrix, SparseVec};
use crate::picard::{Pic2Group, StrictMor};
use crate::prestack::Prestack;

/// Product of the values over one level, with block offsets `(C0, C1)`.
pub(crate) struct LevelProduct {
    pub group: Pic2Group,
    pub off0: Vec<usize>,
    pub off1: Vec<usize>,
}

pub(crate) fn level_product(nerve: &TupleNerve, p: &Prestack, n: usize) -> Result<LevelProduct> {
    let mut parts = Vec::with_capacity(nerve.level(n).len());
    let (mut off0, mut off1) = (vec![0], vec![0]);
    for (_, u) in nerve.level(n) {
        let v = p.value(*u)?;
        off0.push(off0.last().unwrap() + v.c0().ngens());
        off1.push(off1.last().unwrap() + v.c1().ngens());
        parts.push(v.clone());
    }
    Ok(LevelProduct { group: Pic2Group::product(&parts), off0, off1 })
}

/// Block matrix builder: `blocks` are `(target block, source block, matrix)`.
pub(crate) fn assemble(rows: usize, cols: usize, toff: &[usize], soff: &[usize], blocks: &[(usize, usize, &SparseMatrix)]) -> SparseMatrix {
    let mut out = vec![SparseVec::new(); cols];
    for (k, j, m) in blocks {
        for (c, col) in m.columns().iter().enumerate() {
            if !col.is_zero() {
                let slot = &mut out[soff[*j] + c];
                *slot = slot.add(&col.shifted(toff[*k]));
            }
        }
    }
    SparseMatrix::from_columns(rows, out)
}

/// The diagram of `P` over `nerve`: level `n` is the product over level-`n`
/// tuples, `d_i` restricts from the face that deletes entry `i`.
pub fn nerve_diagram(nerve: &TupleNerve, p: &Prestack) -> Result<PrecosimplicialPic> {
    let levels: Vec<LevelProduct> = (0..=nerve.top()).map(|n| level_product(nerve, p, n)).collect::<Result<_>>()?;
    let mut cofaces = Vec::new();
    for n in 0..nerve.top() {
        let (src, tgt) = (&levels[n], &levels[n + 1]);
        let mut fam = Vec::new();
        for i in 0..=n + 1 {
            let mut rs = Vec::new();
            for (k, (t, u)) in nerve.level(n + 1).iter().enumerate() {
                let mut f = t.clone();
                f.remove(i);
                let j = nerve
                    .position(&f)
                    .ok_or_else(|| Error::Invariant(format!("face {f:?} of {t:?} is missing from the nerve")))?;
                rs.push((k, j, p.restriction(nerve.level(n)[j].1, *u)?));
            }
            let b0: Vec<(usize, usize, &SparseMatrix)> = rs.iter().map(|(k, j, r)| (*k, *j, r.f0())).collect();
            let b1: Vec<(usize, usize, &SparseMatrix)> = rs.iter().map(|(k, j, r)| (*k, *j, r.f1())).collect();
            let f0 = assemble(tgt.group.c0().ngens(), src.group.c0().ngens(), &tgt.off0, &src.off0, &b0);
            let f1 = assemble(tgt.group.c1().ngens(), src.group.c1().ngens(), &tgt.off1, &src.off1, &b1);
            fam.push(StrictMor::new_unchecked(&src.group, &tgt.group, f1, f0, p.braided()));
        }
        cofaces.push(fam);
    }
    PrecosimplicialPic::new_unchecked(levels.into_iter().map(|l| l.group).collect(), cofaces, vec![])
}

/// Level maps from the diagram over `coarse` to the diagram over `fine`
/// (every fine tuple must be coarse with a larger open): restriction blockwise.
pub fn refinement_map(fine: &TupleNerve, coarse: &TupleNerve, p: &Prestack) -> Result<Vec<StrictMor>> {
    let top = fine.top().min(coarse.top());
    let mut out = Vec::new();
    for n in 0..=top {
        let (src, tgt) = (level_product(coarse, p, n)?, level_product(fine, p, n)?);
        let mut rs = Vec::new();
        for (k, (t, u)) in fine.level(n).iter().enumerate() {
            let j = coarse.position(t).ok_or_else(|| Error::Input(format!("tuple {t:?} is not in the coarser nerve")))?;
            let v = coarse.level(n)[j].1;
            if u & !v != 0 {
                return Err(Error::Input(format!("tuple {t:?} has a larger open in the finer nerve")));
            }
            rs.push((k, j, p.restriction(v, *u)?));
        }
        let b0: Vec<(usize, usize, &SparseMatrix)> = rs.iter().map(|(k, j, r)| (*k, *j, r.f0())).collect();
        let b1: Vec<(usize, usize, &SparseMatrix)> = rs.iter().map(|(k, j, r)| (*k, *j, r.f1())).collect();
        let f0 = assemble(tgt.group.c0().ngens(), src.group.c0().ngens(), &tgt.off0, &src.off0, &b0);
        let f1 = assemble(tgt.group.c1().ngens(), src.group.c1().ngens(), &tgt.off1, &src.off1, &b1);
        out.push(StrictMor::new_unchecked(&src.group, &tgt.group, f1, f0, p.braided()));
    }
    Ok(out)
}
