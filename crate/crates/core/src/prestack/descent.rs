//! Descent data for the minimal cover of each open, the plus construction,
//! and the stack and separatedness checks built on it.

use super::data::{Prestack, PrestackMor};
use crate::complex2::TwoCochainComplex;
use crate::error::{Error, Result};
use crate::fgab::{SparseMatrix, SparseVec};
use crate::picard::kernel::relative_kernel_raw;
use crate::picard::{PairObjects, Pic2Group, StrictMor};
use crate::site::diagram::{assemble, level_product, LevelProduct};
use crate::site::{members, nerve_diagram, OpenSet, SpecialCover, TupleNerve};
use std::collections::BTreeMap;

/// `𝐇^0` of the minimal cover of one open, with enough bookkeeping to
/// restrict it and to map `P(U)` into it.
pub(crate) struct Descent {
    pub points: Vec<usize>,
    pub nerve: TupleNerve,
    pub level0: LevelProduct,
    pub level1: LevelProduct,
    pub group: Pic2Group,
    pub objects: PairObjects,
}

pub(crate) fn descent(p: &Prestack, u: OpenSet) -> Result<Descent> {
    let cover = SpecialCover::minimal_on(p.space(), u);
    let nerve = cover.cech_nerve(2);
    let c: TwoCochainComplex = nerve_diagram(&nerve, p)?.to_complex_unchecked()?;
    let (group, objects) = relative_kernel_raw(&c.diff(0), c.object(2).c1(), c.diff(1).f1(), &c.track(0).neg());
    Ok(Descent {
        points: members(u),
        level0: level_product(&nerve, p, 0)?,
        level1: level_product(&nerve, p, 1)?,
        nerve,
        group,
        objects,
    })
}

/// Projection of level `n` of `big` onto level `n` of `small`, where the
/// points of `small` are a subset of the points of `big`.
fn project(big: &Descent, small: &Descent, n: usize, on_c1: bool) -> SparseMatrix {
    let (bl, sl) = if n == 0 { (&big.level0, &small.level0) } else { (&big.level1, &small.level1) };
    let (boff, soff) = if on_c1 { (&bl.off1, &sl.off1) } else { (&bl.off0, &sl.off0) };
    let mut blocks = Vec::new();
    let mut ids = Vec::new();
    for (k, (t, _)) in small.nerve.level(n).iter().enumerate() {
        let lifted: Vec<usize> = t
            .iter()
            .map(|&i| big.points.iter().position(|&x| x == small.points[i]).expect("sub-open points"))
            .collect();
        let j = big.nerve.position(&lifted).expect("tuples of a sub-open are tuples of the open");
        ids.push((k, j, SparseMatrix::identity(soff[k + 1] - soff[k])));
    }
    for (k, j, m) in &ids {
        blocks.push((*k, *j, m));
    }
    let (rows, cols) = (*soff.last().unwrap(), *boff.last().unwrap());
    assemble(rows, cols, soff, boff, &blocks)
}

fn restrict_descent(big: &Descent, small: &Descent, braided: bool) -> StrictMor {
    let f1 = project(big, small, 0, true);
    let (p0, p1) = (project(big, small, 0, false), project(big, small, 1, true));
    let (first, second) = (big.objects.first(), big.objects.second());
    let cols = (0..big.group.c0().ngens())
        .map(|k| {
            small
                .objects
                .class_of(&p0.apply(first.col(k)), &p1.apply(second.col(k)))
                .expect("projected descent data is descent data")
        })
        .collect();
    let f0 = SparseMatrix::from_columns(small.group.c0().ngens(), cols);
    StrictMor::new_unchecked(&big.group, &small.group, f1, f0, braided)
}

/// `P(U) → 𝐇^0`, `a ↦ ((a|U_x)_x, 0)`.
fn unit_at(p: &Prestack, u: OpenSet, d: &Descent) -> Result<StrictMor> {
    let pu = p.value(u)?;
    let (mut b0, mut b1) = (Vec::new(), Vec::new());
    let rs: Vec<StrictMor> = d
        .points
        .iter()
        .map(|&x| p.restriction(u, p.space().min_open(x)))
        .collect::<Result<_>>()?;
    for (k, r) in rs.iter().enumerate() {
        b0.push((k, 0, r.f0()));
        b1.push((k, 0, r.f1()));
    }
    let l = &d.level0;
    let a0 = assemble(*l.off0.last().unwrap(), pu.c0().ngens(), &l.off0, &[0, pu.c0().ngens()], &b0);
    let f1 = assemble(*l.off1.last().unwrap(), pu.c1().ngens(), &l.off1, &[0, pu.c1().ngens()], &b1);
    let cols = a0
        .columns()
        .iter()
        .map(|a| d.objects.class_of(a, &SparseVec::new()).expect("restrictions of a section are descent data"))
        .collect();
    let f0 = SparseMatrix::from_columns(d.group.c0().ngens(), cols);
    Ok(StrictMor::new_unchecked(pu, &d.group, f1, f0, p.braided()))
}

/// `P^+` with its unit `P → P^+`.
pub fn plus(p: &Prestack) -> Result<(Prestack, PrestackMor)> {
    let space = p.space();
    let ds: BTreeMap<OpenSet, Descent> = p.opens().iter().map(|&u| Ok((u, descent(p, u)?))).collect::<Result<_>>()?;
    let values = ds.iter().map(|(u, d)| (*u, d.group.clone())).collect();
    let mut restr = BTreeMap::new();
    for (&v, dv) in &ds {
        for (&u, du) in &ds {
            if u != v && u & !v == 0 {
                restr.insert((v, u), restrict_descent(dv, du, p.braided()));
            }
        }
    }
    let q = Prestack::from_parts(space, values, restr, p.braided());
    let units = ds.iter().map(|(u, d)| Ok((*u, unit_at(p, *u, d)?))).collect::<Result<_>>()?;
    let unit = PrestackMor::new_unchecked(p, &q, units)?;
    Ok((q, unit))
}

#[derive(Clone, Debug)]
pub struct Stackification {
    pub stack: Prestack,
    /// `P → stackify(P)`
    pub unit: PrestackMor,
}

/// Two plus steps; the result is checked to be a stack.
pub fn stackify(p: &Prestack) -> Result<Stackification> {
    let (p1, u1) = plus(p)?;
    let (p2, u2) = plus(&p1)?;
    let unit = u2.compose(&u1);
    if let Some(u) = stack_defect(&p2)? {
        return Err(Error::Invariant(format!(
            "stackification is not a stack on {}",
            p.space().format_open(u)
        )));
    }
    Ok(Stackification { stack: p2, unit })
}

fn comparison_defect(p: &Prestack, full: bool) -> Result<Option<OpenSet>> {
    for &u in p.opens() {
        let d = descent(p, u)?;
        let f = unit_at(p, u, &d)?;
        let ok = f.on_pi1().is_iso() && if full { f.on_pi0().is_iso() } else { f.on_pi0().is_injective() };
        if !ok {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// First open where `P(U) → 𝐇^0(minimal cover of U)` is not an equivalence.
pub fn stack_defect(p: &Prestack) -> Result<Option<OpenSet>> {
    comparison_defect(p, true)
}

pub fn is_stack(p: &Prestack) -> Result<bool> {
    Ok(stack_defect(p)?.is_none())
}

/// The comparison is fully faithful on every open.
pub fn is_separated(p: &Prestack) -> Result<bool> {
    Ok(comparison_defect(p, false)?.is_none())
}
