//! Covers of finite spaces, Berishvili covers, and the tuple nerves both
//! cohomology theories are computed on.

use super::space::{bit, members, FiniteSpace, OpenSet};
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};

/// A family of opens, indexed by labels (Čech input).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    labels: Vec<String>,
    opens: Vec<OpenSet>,
}

impl Cover {
    pub fn new(labels: Vec<String>, opens: Vec<OpenSet>) -> Self {
        assert_eq!(labels.len(), opens.len());
        Cover { labels, opens }
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn union(&self) -> OpenSet {
        self.opens.iter().fold(0, |a, b| a | b)
    }

    /// Ordered tuples with repeats and nonempty intersection, levels `0..=top`.
    pub fn cech_nerve(&self, top: usize) -> TupleNerve {
        let mut levels: Vec<Vec<(Vec<usize>, OpenSet)>> = Vec::new();
        levels.push(self.opens.iter().enumerate().filter(|(_, u)| **u != 0).map(|(i, u)| (vec![i], *u)).collect());
        for n in 1..=top {
            let mut next = Vec::new();
            for (t, u) in &levels[n - 1] {
                for (i, v) in self.opens.iter().enumerate() {
                    let w = u & v;
                    if w != 0 {
                        let mut t2 = t.clone();
                        t2.push(i);
                        next.push((t2, w));
                    }
                }
            }
            levels.push(next);
        }
        TupleNerve::new(levels)
    }
}

/// A cover with one open `U_x ∋ x` per point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialCover {
    opens: Vec<OpenSet>,
}

impl SpecialCover {
    pub fn new(space: &FiniteSpace, opens: Vec<OpenSet>) -> Result<Self> {
        if opens.len() != space.len() {
            return Err(Error::Input(format!("special cover needs {} opens, got {}", space.len(), opens.len())));
        }
        for (x, &u) in opens.iter().enumerate() {
            if u & bit(x) == 0 {
                return Err(Error::Input(format!("U_{} does not contain {}", space.name(x), space.name(x))));
            }
            if !space.is_open(u) {
                return Err(Error::Input(format!("U_{} = {} is not open", space.name(x), space.format_open(u))));
            }
        }
        Ok(SpecialCover { opens })
    }

    /// `x ↦ U_x^min`.
    pub fn minimal(space: &FiniteSpace) -> Self {
        SpecialCover { opens: (0..space.len()).map(|x| space.min_open(x)).collect() }
    }

    /// `x ↦ X`.
    pub fn total(space: &FiniteSpace) -> Self {
        SpecialCover { opens: vec![space.whole(); space.len()] }
    }

    /// The minimal cover of the subspace `u` (an open), as a Čech cover.
    pub fn minimal_on(space: &FiniteSpace, u: OpenSet) -> Cover {
        let pts = members(u);
        Cover::new(pts.iter().map(|&x| space.name(x).to_string()).collect(), pts.iter().map(|&x| space.min_open(x)).collect())
    }

    pub fn open(&self, x: usize) -> OpenSet {
        self.opens[x]
    }

    pub fn opens(&self) -> &[OpenSet] {
        &self.opens
    }

    /// `self ≤ other`: `V_x ⊆ U_x` for every point.
    pub fn refines(&self, other: &SpecialCover) -> bool {
        self.opens.iter().zip(&other.opens).all(|(v, u)| v & !u == 0)
    }

    pub fn as_cover(&self, space: &FiniteSpace) -> Cover {
        Cover::new(space.names().to_vec(), self.opens.clone())
    }
}

/// Partial assignment of opens to point tuples, stored up to a length cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BerishviliCover {
    /// `levels[n]` maps defined `(n+1)`-tuples to their opens
    levels: Vec<BTreeMap<Vec<usize>, OpenSet>>,
}

impl BerishviliCover {
    pub fn from_levels(levels: Vec<BTreeMap<Vec<usize>, OpenSet>>) -> Self {
        BerishviliCover { levels }
    }

    /// `α(x) = U_x`, `α(x_0…x_n) = α(x_0…x_{n-1}) ∩ U_{x_n}` when
    /// `x_n ∈ α(x_0…x_{n-1})`, undefined otherwise.
    pub fn from_special(space: &FiniteSpace, u: &SpecialCover, top: usize) -> Self {
        let mut levels = vec![(0..space.len()).map(|x| (vec![x], u.open(x))).collect::<BTreeMap<_, _>>()];
        for n in 1..=top {
            let mut next = BTreeMap::new();
            for (t, &a) in &levels[n - 1] {
                for y in members(a) {
                    let mut t2 = t.clone();
                    t2.push(y);
                    next.insert(t2, a & u.open(y));
                }
            }
            levels.push(next);
        }
        BerishviliCover { levels }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn get(&self, t: &[usize]) -> Option<OpenSet> {
        self.levels.get(t.len().checked_sub(1)?)?.get(t).cloned()
    }

    pub fn level(&self, n: usize) -> &BTreeMap<Vec<usize>, OpenSet> {
        &self.levels[n]
    }

    /// Membership, face monotonicity, extension (below the cap) and totality
    /// on singletons.
    pub fn validate(&self, space: &FiniteSpace) -> Result<()> {
        let show = |t: &[usize]| t.iter().map(|&x| space.name(x)).collect::<Vec<_>>().join(",");
        for x in 0..space.len() {
            if self.get(&[x]).is_none() {
                return Err(Error::Invariant(format!("α({}) is undefined", space.name(x))));
            }
        }
        for (n, lvl) in self.levels.iter().enumerate() {
            for (t, &a) in lvl {
                if !space.is_open(a) {
                    return Err(Error::Invariant(format!("α({}) is not open", show(t))));
                }
                if a & bit(*t.last().unwrap()) == 0 {
                    return Err(Error::Invariant(format!("last point of ({}) is not in α", show(t))));
                }
                if n > 0 {
                    for i in 0..t.len() {
                        let mut f = t.clone();
                        f.remove(i);
                        match self.get(&f) {
                            Some(b) if a & !b == 0 => {}
                            Some(_) => {
                                return Err(Error::Invariant(format!("α({}) ⊄ α({})", show(t), show(&f))))
                            }
                            None => return Err(Error::Invariant(format!("face ({}) of ({}) is undefined", show(&f), show(t)))),
                        }
                    }
                }
                if n < self.top() {
                    for y in members(a) {
                        let mut t2 = t.clone();
                        t2.push(y);
                        if self.get(&t2).is_none() {
                            return Err(Error::Invariant(format!("extension ({}) is undefined", show(&t2))));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `self ≤ other`: every tuple defined here is defined there with a larger open.
    pub fn refines(&self, other: &BerishviliCover) -> bool {
        self.levels
            .iter()
            .flat_map(|l| l.iter())
            .all(|(t, a)| other.get(t).is_some_and(|b| a & !b == 0))
    }

    /// Tuples with their opens, levels `0..=top`.
    pub fn nerve(&self, top: usize) -> TupleNerve {
        let levels =
            (0..=top.min(self.top())).map(|n| self.levels[n].iter().map(|(t, a)| (t.clone(), *a)).collect()).collect();
        TupleNerve::new(levels)
    }
}

/// Tuples per level with their opens, closed under deleting an entry.
#[derive(Clone, Debug)]
pub struct TupleNerve {
    levels: Vec<Vec<(Vec<usize>, OpenSet)>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl TupleNerve {
    pub fn new(mut levels: Vec<Vec<(Vec<usize>, OpenSet)>>) -> Self {
        for l in &mut levels {
            l.sort();
        }
        let index = levels.iter().map(|l| l.iter().enumerate().map(|(k, (t, _))| (t.clone(), k)).collect()).collect();
        TupleNerve { levels, index }
    }

    pub fn top(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, n: usize) -> &[(Vec<usize>, OpenSet)] {
        &self.levels[n]
    }

    pub fn position(&self, t: &[usize]) -> Option<usize> {
        self.index.get(t.len().checked_sub(1)?)?.get(t).cloned()
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    /// Tuples without consecutive repeats (nondegenerate simplices).
    pub fn nondegenerate_counts(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.iter().filter(|(t, _)| t.windows(2).all(|w| w[0] != w[1])).count()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::site::SimplicialComplex;

    #[test]
    fn star_cover_nerve_is_the_complex() {
        let k = SimplicialComplex::triangle_boundary();
        let n = k.star_cover().cech_nerve(2);
        // distinct-vertex tuples spanning a simplex: 3 vertices, 3 edges (×2 orders), no triangles
        let distinct: Vec<usize> = (0..=2)
            .map(|l| {
                n.level(l)
                    .iter()
                    .filter(|(t, _)| {
                        let mut s = t.clone();
                        s.sort();
                        s.dedup();
                        s.len() == t.len()
                    })
                    .count()
            })
            .collect();
        assert_eq!(distinct, vec![3, 6, 0]);
    }

    #[test]
    fn minimal_berishvili_on_pseudocircle_is_descending_chains() {
        let x = FiniteSpace::pseudocircle();
        let b = BerishviliCover::from_special(&x, &SpecialCover::minimal(&x), 3);
        b.validate(&x).unwrap();
        for n in 0..=3 {
            for t in b.level(n).keys() {
                for k in 1..t.len() {
                    for j in 0..k {
                        assert!(x.leq(t[k], t[j]));
                    }
                }
            }
        }
        // every weakly descending chain of length 2 appears
        let pairs = (0..4).flat_map(|a| (0..4).map(move |b| (a, b))).filter(|&(a, b)| x.leq(b, a)).count();
        assert_eq!(b.level(1).len(), pairs);
    }

    #[test]
    fn one_point_berishvili() {
        let x = FiniteSpace::point();
        let b = BerishviliCover::from_special(&x, &SpecialCover::total(&x), 3);
        for n in 0..=3 {
            assert_eq!(b.level(n).len(), 1);
            assert_eq!(*b.level(n).values().next().unwrap(), 1);
        }
    }

    #[test]
    fn minimal_refines_everything() {
        let x = FiniteSpace::pseudocircle();
        let m = SpecialCover::minimal(&x);
        let t = SpecialCover::total(&x);
        assert!(m.refines(&t));
        assert!(!t.refines(&m));
        let bm = BerishviliCover::from_special(&x, &m, 2);
        let bt = BerishviliCover::from_special(&x, &t, 2);
        assert!(bm.refines(&bt));
    }
}
