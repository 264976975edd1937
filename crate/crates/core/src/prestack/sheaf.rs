//! Presheaves of abelian groups on the open family of a finite space, and
//! their sheafification through stalks.

use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, SparseMatrix, SparseVec, Subquotient};
use crate::site::{members, FiniteSpace, OpenSet};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
pub struct Presheaf {
    space: FiniteSpace,
    opens: Vec<OpenSet>,
    values: BTreeMap<OpenSet, FgAbGroup>,
    /// `(V, U) ↦ F(V) → F(U)` for `U ⊊ V`
    restr: BTreeMap<(OpenSet, OpenSet), GroupHom>,
}

impl Presheaf {
    pub(crate) fn from_parts(
        space: FiniteSpace,
        opens: Vec<OpenSet>,
        values: BTreeMap<OpenSet, FgAbGroup>,
        restr: BTreeMap<(OpenSet, OpenSet), GroupHom>,
    ) -> Self {
        Presheaf { space, opens, values, restr }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn value(&self, u: OpenSet) -> Result<FgAbGroup> {
        if u == 0 {
            return Ok(FgAbGroup::zero());
        }
        self.values
            .get(&u)
            .cloned()
            .ok_or_else(|| Error::Input(format!("presheaf is not defined on {}", self.space.format_open(u))))
    }

    pub fn restriction(&self, v: OpenSet, u: OpenSet) -> Result<GroupHom> {
        if u == v {
            return Ok(GroupHom::identity(&self.value(u)?));
        }
        if u == 0 {
            return Ok(GroupHom::zero(&self.value(v)?, &FgAbGroup::zero()));
        }
        self.restr.get(&(v, u)).cloned().ok_or_else(|| {
            Error::Input(format!("no restriction {} → {}", self.space.format_open(v), self.space.format_open(u)))
        })
    }

    pub fn stalk(&self, x: usize) -> FgAbGroup {
        self.value(self.space.min_open(x)).expect("minimal opens are in the family")
    }

    /// Compatible families over the points of `u`, as a subgroup of `∏ F_x`.
    fn sections(&self, u: OpenSet) -> Subquotient {
        let pts = members(u);
        let stalks: Vec<FgAbGroup> = pts.iter().map(|&x| self.stalk(x)).collect();
        let mut off = vec![0];
        for s in &stalks {
            off.push(off.last().unwrap() + s.ngens());
        }
        let ambient = FgAbGroup::direct_sum(&stalks.iter().collect::<Vec<_>>());
        // one constraint block per pair y < x inside u: r(s_x) - s_y
        let mut pairs = Vec::new();
        for (ix, &x) in pts.iter().enumerate() {
            for (iy, &y) in pts.iter().enumerate() {
                if x != y && self.space.leq(y, x) {
                    pairs.push((ix, iy));
                }
            }
        }
        let targets: Vec<FgAbGroup> = pairs.iter().map(|&(_, iy)| stalks[iy].clone()).collect();
        let tgt = FgAbGroup::direct_sum(&targets.iter().collect::<Vec<_>>());
        let mut toff = vec![0];
        for t in &targets {
            toff.push(toff.last().unwrap() + t.ngens());
        }
        let mut cols = vec![SparseVec::new(); ambient.ngens()];
        for (k, &(ix, iy)) in pairs.iter().enumerate() {
            let r = self
                .restriction(self.space.min_open(pts[ix]), self.space.min_open(pts[iy]))
                .expect("restrictions between minimal opens exist");
            for c in 0..stalks[ix].ngens() {
                cols[off[ix] + c] = cols[off[ix] + c].add(&r.matrix().col(c).shifted(toff[k]));
            }
            for c in 0..stalks[iy].ngens() {
                cols[off[iy] + c] = cols[off[iy] + c].sub(&SparseVec::unit(toff[k] + c));
            }
        }
        let constraint = GroupHom::new_unchecked(ambient.clone(), tgt.clone(), SparseMatrix::from_columns(tgt.ngens(), cols));
        Subquotient::new(&ambient, constraint.kernel_lattice(), &[])
    }

    /// `F^+(U)` = compatible families of stalk elements; restrictions forget points.
    pub fn sheafify(&self) -> Presheaf {
        let subs: BTreeMap<OpenSet, Subquotient> = self.opens.iter().map(|&u| (u, self.sections(u))).collect();
        let values = subs.iter().map(|(u, s)| (*u, s.group.clone())).collect();
        let mut restr = BTreeMap::new();
        for (&v, sv) in &subs {
            let pv = members(v);
            for (&u, su) in &subs {
                if u != v && u & !v == 0 {
                    let pu = members(u);
                    let mut offv = vec![0];
                    for &x in &pv {
                        offv.push(offv.last().unwrap() + self.stalk(x).ngens());
                    }
                    let mut offu = vec![0];
                    for &x in &pu {
                        offu.push(offu.last().unwrap() + self.stalk(x).ngens());
                    }
                    let mut cols = vec![SparseVec::new(); *offv.last().unwrap()];
                    for (iu, x) in pu.iter().enumerate() {
                        let iv = pv.iter().position(|p| p == x).unwrap();
                        for c in 0..self.stalk(*x).ngens() {
                            cols[offv[iv] + c] = SparseVec::unit(offu[iu] + c);
                        }
                    }
                    let m = SparseMatrix::from_columns(*offu.last().unwrap(), cols);
                    restr.insert((v, u), sv.induced(su, &m).expect("forgetting points keeps compatibility"));
                }
            }
        }
        Presheaf { space: self.space.clone(), opens: self.opens.clone(), values, restr }
    }

    /// `F(U) → F^+(U)`, `s ↦ (s|U_x)_x`, on every open.
    pub fn unit(&self, plus: &Presheaf) -> BTreeMap<OpenSet, GroupHom> {
        let mut out = BTreeMap::new();
        for &u in &self.opens {
            let sub = self.sections(u);
            let pts = members(u);
            let blocks: Vec<SparseMatrix> = pts
                .iter()
                .map(|&x| self.restriction(u, self.space.min_open(x)).unwrap().matrix().clone())
                .collect();
            let m = blocks
                .iter()
                .fold(SparseMatrix::zero(0, self.value(u).unwrap().ngens()), |acc, b| SparseMatrix::vstack(&acc, b));
            let h = sub.induced_from(&self.value(u).unwrap(), &m).expect("restrictions of a section are compatible");
            out.insert(u, GroupHom::new_unchecked(h.source().clone(), plus.value(u).unwrap(), h.matrix().clone()));
        }
        out
    }

    /// `F → F^+` is an isomorphism on every open.
    pub fn is_sheaf(&self) -> bool {
        let plus = self.sheafify();
        self.unit(&plus).values().all(|h| h.is_iso())
    }
}
