//! Checks of the structural results the pipelines rely on: the contraction
//! for elementary coefficients, the refinement killing cocycles with zero
//! stalks, the vanishing bounds, and invariance under stackification.

use super::cohomology::{cochain_complex, cohomology, tu_groups, Mode};
use super::data::Prestack;
use super::descent::{is_stack, stackify};
use crate::complex2::Cone;
use crate::error::{Error, Result};
use crate::fgab::{Int, SparseMatrix, SparseVec};
use crate::picard::Pic2Group;
use crate::site::{members, refinement_map, BerishviliCover, FiniteSpace, Site, SpecialCover, TupleNerve};
use std::collections::BTreeMap;

/// One named check with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

/// Offsets of the fibers of an elementary prestack inside `∏_{y∈W} A_y`.
fn fiber_offsets(fibers: &[Pic2Group], w: u128, on_c1: bool) -> BTreeMap<usize, (usize, usize)> {
    let mut out = BTreeMap::new();
    let mut off = 0;
    for y in members(w) {
        let n = if on_c1 { fibers[y].c1().ngens() } else { fibers[y].c0().ngens() };
        out.insert(y, (off, n));
        off += n;
    }
    out
}

/// `(h f)_y(x_0…x_{n-1}) = (-1)^n f_y(x_0…x_{n-1}, y)` on level `n` of the
/// Berishvili nerve, for elementary coefficients with the given fibers.
pub fn contraction_matrix(nerve: &TupleNerve, fibers: &[Pic2Group], n: usize, on_c1: bool) -> SparseMatrix {
    let level_offsets = |m: usize| {
        let mut offs = vec![0];
        for (_, w) in nerve.level(m) {
            let size: usize = members(*w)
                .iter()
                .map(|&y| if on_c1 { fibers[y].c1().ngens() } else { fibers[y].c0().ngens() })
                .sum();
            offs.push(offs.last().unwrap() + size);
        }
        offs
    };
    let (src, tgt) = (level_offsets(n), level_offsets(n - 1));
    let mut cols = vec![SparseVec::new(); *src.last().unwrap()];
    let sign = if n % 2 == 0 { 1 } else { -1 };
    for (k, (t, w)) in nerve.level(n - 1).iter().enumerate() {
        let here = fiber_offsets(fibers, *w, on_c1);
        for (&y, &(oy, len)) in &here {
            let mut longer = t.clone();
            longer.push(y);
            let j = nerve.position(&longer).expect("membership makes the extended tuple defined");
            let there = fiber_offsets(fibers, nerve.level(n)[j].1, on_c1);
            let (oz, _) = there[&y];
            for c in 0..len {
                cols[src[j] + oz + c] = SparseVec::single(tgt[k] + oy + c, Int::from(sign));
            }
        }
    }
    SparseMatrix::from_columns(*tgt.last().unwrap(), cols)
}

/// `δh + hδ = id` in degrees `1..top` on both layers and on the cone, for
/// the elementary prestack with the given fibers.
pub fn contraction_check(space: &FiniteSpace, fibers: &[Pic2Group], top: usize) -> Result<Check> {
    let p = Prestack::elementary(space, fibers)?;
    let site = Site::poset(space);
    let c = cochain_complex(&site, &p, Mode::Berishvili, top)?;
    let nerve = BerishviliCover::from_special(space, &SpecialCover::minimal(space), top).nerve(top);
    let cone = Cone::new(&c);
    for n in 1..top {
        for on_c1 in [false, true] {
            let h_n = contraction_matrix(&nerve, fibers, n, on_c1);
            let h_next = contraction_matrix(&nerve, fibers, n + 1, on_c1);
            let (d_prev, d_n) = if on_c1 {
                (c.diff(n as i64 - 1).f1().clone(), c.diff(n as i64).f1().clone())
            } else {
                (c.diff(n as i64 - 1).f0().clone(), c.diff(n as i64).f0().clone())
            };
            let homotopy = d_prev.compose(&h_n).add(&h_next.compose(&d_n));
            if !homotopy.sub(&SparseMatrix::identity(h_n.ncols())).is_zero() {
                let layer = if on_c1 { "C1" } else { "C0" };
                return Ok(Check::new("contraction", false, format!("δh + hδ ≠ id on {layer} in degree {n}")));
            }
        }
        if n + 1 < top {
            // h_T(a, m) = (h a, -h m) on T^n = C0^n ⊕ C1^{n+1}
            let ht = |k: usize| {
                SparseMatrix::block_diag(&[
                    &contraction_matrix(&nerve, fibers, k, false),
                    &contraction_matrix(&nerve, fibers, k + 1, true).neg(),
                ])
            };
            let dd = cone.complex.differential(n as i64 - 1).matrix().compose(&ht(n));
            let dd = dd.add(&ht(n + 1).compose(cone.complex.differential(n as i64).matrix()));
            if !dd.sub(&SparseMatrix::identity(dd.ncols())).is_zero() {
                return Ok(Check::new("contraction", false, format!("cone contraction fails in degree {n}")));
            }
        }
    }
    Ok(Check::new("contraction", true, format!("δh + hδ = id in degrees 1..{}", top - 1)))
}

/// `H^{n>0}_U = 0`, `𝐇^{n>1} = 0` and `π^0 𝐇^1 = 0` for elementary coefficients.
pub fn elementary_bounds_check(site: &Site, fibers: &[Pic2Group], mode: Mode, hi: usize) -> Result<Check> {
    let p = Prestack::elementary(site.space(), fibers)?;
    let r = cohomology(site, &p, mode, 0, hi, None)?;
    for d in &r.degrees {
        let n = d.degree;
        if n > 0 && !d.tu.is_trivial() {
            return Ok(Check::new("elementary bounds", false, format!("H^{n}_U = {} ≠ 0", d.tu)));
        }
        if n > 1 && !(d.secondary.pi0().is_trivial() && d.secondary.pi1().is_trivial()) {
            return Ok(Check::new("elementary bounds", false, format!("𝐇^{n} = {} ≠ 0", d.secondary.qdata())));
        }
        if n == 1 && !d.secondary.pi0().is_trivial() {
            return Ok(Check::new("elementary bounds", false, format!("π^0 𝐇^1 = {} ≠ 0", d.secondary.pi0())));
        }
    }
    Ok(Check::new("elementary bounds", true, format!("{mode}, degrees 0..={hi}")))
}

/// `β(x⃗) = α(x⃗) ∩ ⋂_k U_{x_k}^min`, defined on the tuples of `α` whose
/// last entry lies in `β` of the prefix.
pub fn refinement_through_stalks(space: &FiniteSpace, alpha: &BerishviliCover) -> BerishviliCover {
    let mut levels: Vec<BTreeMap<Vec<usize>, u128>> =
        vec![alpha.level(0).iter().map(|(t, a)| (t.clone(), a & space.min_open(t[0]))).collect()];
    for n in 1..=alpha.top() {
        let mut next = BTreeMap::new();
        for (t, &b) in &levels[n - 1] {
            for y in members(b) {
                let mut t2 = t.clone();
                t2.push(y);
                if let Some(a) = alpha.get(&t2) {
                    next.insert(t2, a & b & space.min_open(y));
                }
            }
        }
        levels.push(next);
    }
    BerishviliCover::from_levels(levels)
}

#[derive(Clone, Debug)]
pub struct RefinementReport {
    pub beta: BerishviliCover,
    pub refines: bool,
    pub was_nonzero: bool,
    pub killed: bool,
}

/// For `P` with all stalks zero and a degree-`level` element `f` of
/// `C0(α, P)`, build `β` and check that `f` restricts to zero on it.
pub fn refinement_kills(p: &Prestack, alpha: &BerishviliCover, level: usize, f: &SparseVec) -> Result<RefinementReport> {
    let space = p.space();
    for x in 0..space.len() {
        let s = p.stalk(x);
        if !(s.pi0().is_trivial() && s.pi1().is_trivial()) {
            return Err(Error::Input(format!("stalk at {} is not zero", space.name(x))));
        }
    }
    alpha.validate(space)?;
    let beta = refinement_through_stalks(space, alpha);
    beta.validate(space)?;
    let top = alpha.top();
    let (fine, coarse) = (beta.nerve(top), alpha.nerve(top));
    let maps = refinement_map(&fine, &coarse, p)?;
    let m = &maps[level];
    let was_nonzero = !m.source().c0().is_zero_element(f);
    let killed = m.target().c0().is_zero_element(&m.f0().apply(f));
    Ok(RefinementReport { refines: beta.refines(alpha), beta, was_nonzero, killed })
}

/// The standard instance: two discrete points, `P(X) = Φ`, zero stalks,
/// the total cover, and the cocycle `f(x) = 1`.
pub fn refinement_example() -> Result<(Check, RefinementReport)> {
    let space = FiniteSpace::discrete(2);
    let mut values = BTreeMap::new();
    for u in space.open_family() {
        values.insert(u, if u == space.whole() { Pic2Group::phi() } else { Pic2Group::zero() });
    }
    let whole = space.whole();
    let zeros = (0..2)
        .map(|x| {
            let u = space.min_open(x);
            (whole, u, crate::picard::StrictMor::zero(&values[&whole], &values[&u]))
        })
        .collect();
    let p = Prestack::from_table(&space, values, zeros)?;
    let alpha = BerishviliCover::from_special(&space, &SpecialCover::total(&space), 2);
    let f = SparseVec::from_i64(&[1, 1]);
    let r = refinement_kills(&p, &alpha, 0, &f)?;
    let ok = r.refines && r.was_nonzero && r.killed;
    Ok((Check::new("refinement kills cocycle", ok, "two points, P(X) = Φ, total cover, f = 1"), r))
}

/// `H^*_U(P)` and `H^*_U(stackify P)` agree in degrees `0..=hi`.
pub fn stackify_invariance_check(site: &Site, p: &Prestack, mode: Mode, hi: usize) -> Result<Check> {
    let s = stackify(p)?;
    let a = tu_groups(site, p, mode, hi)?;
    let b = tu_groups(site, &s.stack, mode, hi)?;
    for (n, (x, y)) in a.iter().zip(&b).enumerate() {
        if !x.is_isomorphic(y) {
            return Ok(Check::new("stackify invariance", false, format!("H^{n}_U: {x} vs {y}")));
        }
    }
    let stalks_ok = (0..p.space().len()).all(|x| p.stalk(x).qdata() == s.stack.stalk(x).qdata());
    if !stalks_ok {
        return Ok(Check::new("stackify invariance", false, "stalk data changed"));
    }
    Ok(Check::new("stackify invariance", is_stack(&s.stack)?, format!("{mode}, degrees 0..={hi}")))
}
