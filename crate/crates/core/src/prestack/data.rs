//! Strict prestacks of 2-groups on the open family of a finite space.

use super::sheaf::Presheaf;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, SparseMatrix, SparseVec};
use crate::picard::{Pic2Group, StrictMor};
use crate::site::{members, FiniteSpace, OpenSet};
use std::collections::{BTreeMap, VecDeque};

/// Values on every open of `space.open_family()` and a restriction for every
/// proper inclusion, composing exactly.
#[derive(Clone, Debug)]
pub struct Prestack {
    space: FiniteSpace,
    opens: Vec<OpenSet>,
    values: BTreeMap<OpenSet, Pic2Group>,
    /// `(V, U) ↦ r^V_U` for `U ⊊ V`
    restr: BTreeMap<(OpenSet, OpenSet), StrictMor>,
    braided: bool,
}

fn proper_pairs(opens: &[OpenSet]) -> Vec<(OpenSet, OpenSet)> {
    let mut out = Vec::new();
    for &v in opens {
        for &u in opens {
            if u != v && u & !v == 0 {
                out.push((v, u));
            }
        }
    }
    out
}

impl Prestack {
    /// `value` on every family open, `restrict(V, U, P(V), P(U))` on every
    /// proper inclusion. Strictness is the caller's responsibility.
    pub(crate) fn from_fn(
        space: &FiniteSpace,
        value: impl Fn(OpenSet) -> Pic2Group,
        restrict: impl Fn(OpenSet, OpenSet, &Pic2Group, &Pic2Group) -> StrictMor,
        braided: bool,
    ) -> Self {
        let opens = space.open_family();
        let values: BTreeMap<OpenSet, Pic2Group> = opens.iter().map(|&u| (u, value(u))).collect();
        let restr = proper_pairs(&opens)
            .into_iter()
            .map(|(v, u)| ((v, u), restrict(v, u, &values[&v], &values[&u])))
            .collect();
        Prestack { space: space.clone(), opens, values, restr, braided }
    }

    pub fn constant(space: &FiniteSpace, a: &Pic2Group) -> Self {
        Self::from_fn(space, |_| a.clone(), |_, _, s, _| StrictMor::identity(s), true)
    }

    /// `P(U) = ∏_{x∈U} A_x` with projections.
    pub fn elementary(space: &FiniteSpace, fibers: &[Pic2Group]) -> Result<Self> {
        if fibers.len() != space.len() {
            return Err(Error::Input(format!(
                "elementary prestack needs {} fibers, got {}",
                space.len(),
                fibers.len()
            )));
        }
        let value = |u: OpenSet| Pic2Group::product(&members(u).iter().map(|&x| fibers[x].clone()).collect::<Vec<_>>());
        let restrict = |v: OpenSet, u: OpenSet, s: &Pic2Group, t: &Pic2Group| {
            let (mut f0, mut f1) = (Vec::new(), Vec::new());
            let keep = members(u);
            let (mut o0, mut o1) = (0, 0);
            let (mut k0, mut k1) = (0, 0);
            for x in members(v) {
                let (n0, n1) = (fibers[x].c0().ngens(), fibers[x].c1().ngens());
                let kept = keep.contains(&x);
                for c in 0..n0 {
                    f0.push(if kept { SparseVec::unit(o0 + c) } else { SparseVec::new() });
                }
                for c in 0..n1 {
                    f1.push(if kept { SparseVec::unit(o1 + c) } else { SparseVec::new() });
                }
                if kept {
                    o0 += n0;
                    o1 += n1;
                }
                k0 += n0;
                k1 += n1;
            }
            debug_assert_eq!((k0, k1), (s.c0().ngens(), s.c1().ngens()));
            StrictMor::new_unchecked(
                s,
                t,
                SparseMatrix::from_columns(t.c1().ngens(), f1),
                SparseMatrix::from_columns(t.c0().ngens(), f0),
                true,
            )
        };
        Ok(Self::from_fn(space, value, restrict, true))
    }

    /// `i_x(A)(U) = A` if `x ∈ U`, else `0`.
    pub fn skyscraper(space: &FiniteSpace, x: usize, a: &Pic2Group) -> Result<Self> {
        if x >= space.len() {
            return Err(Error::Input(format!("no point {x} in a space with {} points", space.len())));
        }
        let value = |u: OpenSet| if u >> x & 1 == 1 { a.clone() } else { Pic2Group::zero() };
        let restrict = |_: OpenSet, u: OpenSet, s: &Pic2Group, t: &Pic2Group| {
            if u >> x & 1 == 1 {
                StrictMor::identity(s)
            } else {
                StrictMor::zero(s, t)
            }
        };
        Ok(Self::from_fn(space, value, restrict, true))
    }

    /// Discrete prestack `U ↦ K(0 → F(U))`.
    pub fn discrete(f: &Presheaf) -> Result<Self> {
        let space = f.space();
        let value = |u: OpenSet| Pic2Group::discrete(&f.value(u).expect("presheaf covers the family"));
        let restrict = |v: OpenSet, u: OpenSet, s: &Pic2Group, t: &Pic2Group| {
            let r = f.restriction(v, u).expect("presheaf covers the family");
            StrictMor::new_unchecked(s, t, SparseMatrix::zero(0, 0), r.matrix().clone(), true)
        };
        if f.opens() != space.open_family().as_slice() {
            return Err(Error::Input("presheaf is not defined on the open family".into()));
        }
        Ok(Self::from_fn(space, value, restrict, true))
    }

    /// Explicit table: a value on every family open and generating
    /// restrictions; all other restrictions are composites, which must agree.
    pub fn from_table(
        space: &FiniteSpace,
        values: BTreeMap<OpenSet, Pic2Group>,
        generators: Vec<(OpenSet, OpenSet, StrictMor)>,
    ) -> Result<Self> {
        let opens = space.open_family();
        for u in &opens {
            if !values.contains_key(u) {
                return Err(Error::Input(format!("missing value on {}", space.format_open(*u))));
            }
        }
        if let Some(u) = values.keys().find(|u| !opens.contains(u)) {
            return Err(Error::Input(format!("{} is not in the open family", space.format_open(*u))));
        }
        let mut adj: BTreeMap<OpenSet, Vec<(OpenSet, StrictMor)>> = BTreeMap::new();
        for (v, u, m) in generators {
            if u == v || u & !v != 0 {
                return Err(Error::Input(format!(
                    "restriction {} → {} is not along a proper inclusion",
                    space.format_open(v),
                    space.format_open(u)
                )));
            }
            let (s, t) = (&values[&v], &values[&u]);
            StrictMor::new(s, t, m.f1().clone(), m.f0().clone())
                .map_err(|e| Error::Invariant(format!("restriction {} → {}: {e}", space.format_open(v), space.format_open(u))))?;
            adj.entry(v).or_default().push((u, m));
        }
        let mut restr = BTreeMap::new();
        for &v in &opens {
            let mut best: BTreeMap<OpenSet, StrictMor> = BTreeMap::new();
            best.insert(v, StrictMor::identity(&values[&v]));
            let mut queue = VecDeque::from([v]);
            while let Some(w) = queue.pop_front() {
                let mw = best[&w].clone();
                for (u, m) in adj.get(&w).map(|x| x.as_slice()).unwrap_or(&[]) {
                    let comp = m.compose(&mw);
                    match best.get(u) {
                        Some(prev) if !prev.equals(&comp) => {
                            return Err(Error::Invariant(format!(
                                "restrictions {} → {} differ along two paths",
                                space.format_open(v),
                                space.format_open(*u)
                            )))
                        }
                        Some(_) => {}
                        None => {
                            best.insert(*u, comp);
                            queue.push_back(*u);
                        }
                    }
                }
            }
            for &u in &opens {
                if u != v && u & !v == 0 {
                    let r = best.remove(&u).ok_or_else(|| {
                        Error::Input(format!(
                            "no restriction path {} → {}",
                            space.format_open(v),
                            space.format_open(u)
                        ))
                    })?;
                    restr.insert((v, u), r);
                }
            }
        }
        Ok(Prestack { space: space.clone(), opens, values, restr, braided: true })
    }

    /// Rebuild from already computed data (used by the plus construction).
    pub(crate) fn from_parts(
        space: &FiniteSpace,
        values: BTreeMap<OpenSet, Pic2Group>,
        restr: BTreeMap<(OpenSet, OpenSet), StrictMor>,
        braided: bool,
    ) -> Self {
        Prestack { space: space.clone(), opens: space.open_family(), values, restr, braided }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    /// The opens the prestack is defined on.
    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn value(&self, u: OpenSet) -> Result<&Pic2Group> {
        static ZERO: std::sync::OnceLock<Pic2Group> = std::sync::OnceLock::new();
        if u == 0 {
            return Ok(ZERO.get_or_init(Pic2Group::zero));
        }
        self.values
            .get(&u)
            .ok_or_else(|| Error::Input(format!("prestack is not defined on {}", self.space.format_open(u))))
    }

    /// `r^V_U` for `U ⊆ V`.
    pub fn restriction(&self, v: OpenSet, u: OpenSet) -> Result<StrictMor> {
        if u == v {
            return Ok(StrictMor::identity(self.value(u)?));
        }
        if u == 0 {
            return Ok(StrictMor::zero(self.value(v)?, self.value(0)?));
        }
        self.restr.get(&(v, u)).cloned().ok_or_else(|| {
            Error::Input(format!(
                "no restriction {} → {}",
                self.space.format_open(v),
                self.space.format_open(u)
            ))
        })
    }

    /// Whether every restriction is known to preserve the braiding, not only `q`.
    pub fn braided(&self) -> bool {
        self.braided
    }

    /// `P_x = P(U_x^min)`.
    pub fn stalk(&self, x: usize) -> &Pic2Group {
        self.value(self.space.min_open(x)).expect("minimal opens are in the family")
    }

    pub fn global_sections(&self) -> &Pic2Group {
        self.value(self.space.whole()).expect("the whole space is in the family")
    }

    /// Every value and restriction is valid and composites agree exactly.
    pub fn validate(&self) -> Result<()> {
        for (u, p) in &self.values {
            p.validate().map_err(|e| Error::Invariant(format!("value on {}: {e}", self.space.format_open(*u))))?;
        }
        for (&(v, u), r) in &self.restr {
            StrictMor::chain_map(r.source(), r.target(), r.f1().clone(), r.f0().clone())
                .map_err(|e| Error::Invariant(format!("restriction {} → {}: {e}", self.space.format_open(v), self.space.format_open(u))))?;
            if !r.preserves_q() {
                return Err(Error::Invariant(format!(
                    "restriction {} → {} does not preserve q",
                    self.space.format_open(v),
                    self.space.format_open(u)
                )));
            }
        }
        for &(w, v) in self.restr.keys() {
            for &u in &self.opens {
                if u != v && u & !v == 0 {
                    let comp = self.restr[&(v, u)].compose(&self.restr[&(w, v)]);
                    if !comp.equals(&self.restr[&(w, u)]) {
                        return Err(Error::Invariant(format!(
                            "restrictions {} → {} → {} do not compose strictly",
                            self.space.format_open(w),
                            self.space.format_open(v),
                            self.space.format_open(u)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// `U ↦ π^0 P(U)` (`i = 0`) or `U ↦ π^{-1} P(U)` (`i = -1`).
    pub fn pi_presheaf(&self, i: i32) -> Result<Presheaf> {
        let group = |p: &Pic2Group| if i == 0 { p.pi0().clone() } else { p.pi1().clone() };
        let on = |r: &StrictMor| if i == 0 { r.on_pi0() } else { r.on_pi1() };
        if i != 0 && i != -1 {
            return Err(Error::Input(format!("π^{i} is only defined for i = 0, -1")));
        }
        let values: BTreeMap<OpenSet, FgAbGroup> = self.values.iter().map(|(u, p)| (*u, group(p))).collect();
        let restr: BTreeMap<(OpenSet, OpenSet), GroupHom> = self.restr.iter().map(|(k, r)| (*k, on(r))).collect();
        Ok(Presheaf::from_parts(self.space.clone(), self.opens.clone(), values, restr))
    }
}

/// `f(U): P(U) → Q(U)` for every open, natural on the nose.
#[derive(Clone, Debug)]
pub struct PrestackMor {
    source: Prestack,
    target: Prestack,
    maps: BTreeMap<OpenSet, StrictMor>,
}

impl PrestackMor {
    pub fn new(source: &Prestack, target: &Prestack, maps: BTreeMap<OpenSet, StrictMor>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, maps)?;
        for (&u, m) in &f.maps {
            StrictMor::chain_map(m.source(), m.target(), m.f1().clone(), m.f0().clone())
                .map_err(|e| Error::Invariant(format!("component on {}: {e}", source.space.format_open(u))))?;
        }
        for (&(v, u), r) in &source.restr {
            let lhs = f.maps[&u].compose(r);
            let rhs = target.restr[&(v, u)].compose(&f.maps[&v]);
            if !lhs.equals(&rhs) {
                return Err(Error::Invariant(format!(
                    "components are not natural along {} → {}",
                    source.space.format_open(v),
                    source.space.format_open(u)
                )));
            }
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: &Prestack, target: &Prestack, maps: BTreeMap<OpenSet, StrictMor>) -> Result<Self> {
        if source.space.names() != target.space.names() {
            return Err(Error::Input("prestacks live on different spaces".into()));
        }
        for u in &source.opens {
            if !maps.contains_key(u) {
                return Err(Error::Input(format!("missing component on {}", source.space.format_open(*u))));
            }
        }
        Ok(PrestackMor { source: source.clone(), target: target.clone(), maps })
    }

    /// The same strict morphism on every open between constant prestacks.
    pub fn constant(space: &FiniteSpace, f: &StrictMor) -> Self {
        let source = Prestack::constant(space, f.source());
        let target = Prestack::constant(space, f.target());
        let maps = source.opens.iter().map(|&u| (u, f.clone())).collect();
        PrestackMor { source, target, maps }
    }

    pub fn source(&self) -> &Prestack {
        &self.source
    }

    pub fn target(&self) -> &Prestack {
        &self.target
    }

    pub fn component(&self, u: OpenSet) -> StrictMor {
        if u == 0 {
            return StrictMor::zero(&Pic2Group::zero(), &Pic2Group::zero());
        }
        self.maps[&u].clone()
    }

    pub fn stalk(&self, x: usize) -> StrictMor {
        self.component(self.source.space.min_open(x))
    }

    pub fn compose(&self, other: &PrestackMor) -> PrestackMor {
        let maps = self.maps.iter().map(|(u, m)| (*u, m.compose(&other.maps[u]))).collect();
        PrestackMor { source: other.source.clone(), target: self.target.clone(), maps }
    }

    /// π^{-1}-isomorphism and π^0-monomorphism on every open, π^0-surjective on stalks.
    pub fn is_weak_equivalence(&self) -> bool {
        let open_ok = self.maps.values().all(|m| m.on_pi1().is_iso() && m.on_pi0().is_injective());
        let stalk_ok = (0..self.source.space.len()).all(|x| self.stalk(x).on_pi0().is_surjective());
        open_ok && stalk_ok
    }
}
