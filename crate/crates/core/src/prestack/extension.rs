//! Extensions of prestacks, checked openwise or stalkwise, and their long
//! exact sequence in `H_U`.

use super::cohomology::{cover_nerve, required_truncation, Mode};
use super::data::{Prestack, PrestackMor};
use crate::complex2::{ComplexExtension, ComplexMor, ExtensionLes};
use crate::error::{Error, Result};
use crate::fgab::SparseMatrix;
use crate::picard::kernel::{comparison_to_kernel, kernel, two_exact};
use crate::picard::{StrictMor, Track};
use crate::site::{nerve_diagram, OpenSet, Site, TupleNerve};
use std::collections::BTreeMap;

/// `0 → A → B → C → 0` with `α(U): 0 ⇒ p(U) i(U)` natural in `U`.
#[derive(Clone, Debug)]
pub struct PrestackExtension {
    pub i: PrestackMor,
    pub p: PrestackMor,
    alpha: BTreeMap<OpenSet, SparseMatrix>,
}

/// `i`, `p` and `α` form an extension of 2-groups.
pub fn is_extension(i: &StrictMor, p: &StrictMor, alpha: &Track) -> Result<bool> {
    let (cmp, _) = comparison_to_kernel(i, p, alpha)?;
    Ok(two_exact(i, p, alpha)? && cmp.on_pi0().is_iso() && cmp.on_pi1().is_iso() && p.on_pi0().is_surjective())
}

impl PrestackExtension {
    pub fn new(i: PrestackMor, p: PrestackMor, alpha: BTreeMap<OpenSet, SparseMatrix>) -> Result<Self> {
        let e = PrestackExtension { i, p, alpha };
        let space = e.i.source().space().clone();
        for &u in e.i.source().opens() {
            e.track(u).map_err(|err| Error::Invariant(format!("α on {}: {err}", space.format_open(u))))?;
        }
        let (a, c) = (e.i.source(), e.p.target());
        for &v in a.opens() {
            for &u in a.opens() {
                if u != v && u & !v == 0 {
                    let lhs = c.restriction(v, u)?.f1().compose(&e.alpha[&v]);
                    let rhs = e.alpha[&u].compose(a.restriction(v, u)?.f0());
                    let g = c.value(u)?.c1();
                    if !lhs.sub(&rhs).columns().iter().all(|x| g.is_zero_element(x)) {
                        return Err(Error::Invariant(format!(
                            "α is not natural along {} → {}",
                            space.format_open(v),
                            space.format_open(u)
                        )));
                    }
                }
            }
        }
        Ok(e)
    }

    fn track(&self, u: OpenSet) -> Result<Track> {
        let (i, p) = (self.i.component(u), self.p.component(u));
        let zero = StrictMor::zero(i.source(), p.target());
        Track::new(&zero, &p.compose(&i), self.alpha[&u].clone())
    }

    /// Opens where `A(U) → B(U) → C(U)` fails to be an extension.
    pub fn open_failures(&self) -> Result<Vec<OpenSet>> {
        let mut out = Vec::new();
        for &u in self.i.source().opens() {
            if !is_extension(&self.i.component(u), &self.p.component(u), &self.track(u)?)? {
                out.push(u);
            }
        }
        Ok(out)
    }

    /// Points where the stalk sequence fails to be an extension.
    pub fn stalk_failures(&self) -> Result<Vec<usize>> {
        let space = self.i.source().space();
        let mut out = Vec::new();
        for x in 0..space.len() {
            let u = space.min_open(x);
            if !is_extension(&self.i.component(u), &self.p.component(u), &self.track(u)?)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    /// The long exact `H_U` sequence over the cover of `mode`, degrees `0..=hi`.
    pub fn long_exact_sequence(&self, site: &Site, mode: Mode, hi: usize) -> Result<ExtensionLes> {
        let top = required_truncation(hi);
        let nerve = cover_nerve(site, mode, top);
        let (a, b, c) = (self.i.source(), self.i.target(), self.p.target());
        let ca = nerve_diagram(&nerve, a)?.to_complex_unchecked()?;
        let cb = nerve_diagram(&nerve, b)?.to_complex_unchecked()?;
        let cc = nerve_diagram(&nerve, c)?.to_complex_unchecked()?;
        let i = ComplexMor::strict(&ca, &cb, 0, level_maps(&nerve, &self.i, top))?;
        let p = ComplexMor::strict(&cb, &cc, 0, level_maps(&nerve, &self.p, top))?;
        let alphas = (0..=top)
            .map(|n| {
                let blocks: Vec<&SparseMatrix> = nerve.level(n).iter().map(|(_, u)| &self.alpha[u]).collect();
                SparseMatrix::block_diag(&blocks)
            })
            .collect();
        ComplexExtension::new(i, p, 0, alphas)?.long_exact_sequence()
    }
}

/// `f` blockwise over every level of the nerve.
pub fn level_maps(nerve: &TupleNerve, f: &PrestackMor, top: usize) -> Vec<StrictMor> {
    (0..=top)
        .map(|n| {
            let comps: Vec<StrictMor> = nerve.level(n).iter().map(|(_, u)| f.component(*u)).collect();
            let f0: Vec<&SparseMatrix> = comps.iter().map(|m| m.f0()).collect();
            let f1: Vec<&SparseMatrix> = comps.iter().map(|m| m.f1()).collect();
            let src = crate::picard::Pic2Group::product(&comps.iter().map(|m| m.source().clone()).collect::<Vec<_>>());
            let tgt = crate::picard::Pic2Group::product(&comps.iter().map(|m| m.target().clone()).collect::<Vec<_>>());
            StrictMor::new_unchecked(
                &src,
                &tgt,
                SparseMatrix::block_diag(&f1),
                SparseMatrix::block_diag(&f0),
                f.source().braided() && f.target().braided(),
            )
        })
        .collect()
}

/// Openwise kernel of `p`, with the inclusion and the kernel tracks: the
/// extension `Ker p → B → C` (an extension when `p` is cofaithful).
pub fn kernel_extension(p: &PrestackMor) -> Result<PrestackExtension> {
    let b = p.source();
    let space = b.space();
    let ks: BTreeMap<OpenSet, _> = b.opens().iter().map(|&u| (u, kernel(&p.component(u)))).collect();
    let values = ks.iter().map(|(u, k)| (*u, k.group.clone())).collect();
    let mut restr = BTreeMap::new();
    for (&v, kv) in &ks {
        for (&u, ku) in &ks {
            if u != v && u & !v == 0 {
                let (rb, rc) = (b.restriction(v, u)?, p.target().restriction(v, u)?);
                let (first, second) = (kv.objects.first(), kv.objects.second());
                let cols = (0..kv.group.c0().ngens())
                    .map(|j| {
                        ku.objects
                            .class_of(&rb.f0().apply(first.col(j)), &rc.f1().apply(second.col(j)))
                            .expect("restriction preserves kernel objects")
                    })
                    .collect();
                let f0 = SparseMatrix::from_columns(ku.group.c0().ngens(), cols);
                restr.insert((v, u), StrictMor::new_unchecked(&kv.group, &ku.group, rb.f1().clone(), f0, false));
            }
        }
    }
    let a = Prestack::from_parts(space, values, restr, false);
    let incl = ks.iter().map(|(u, k)| (*u, k.inclusion.clone())).collect();
    let i = PrestackMor::new_unchecked(&a, b, incl)?;
    let alpha = ks.iter().map(|(u, k)| (*u, k.objects.second())).collect();
    PrestackExtension::new(i, p.clone(), alpha)
}
