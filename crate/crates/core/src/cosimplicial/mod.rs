//! Precosimplicial 2-groups (cofaces commuting up to coherent tracks) and
//! their alternating-sum 2-cochain complexes.

use crate::complex2::TwoCochainComplex;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, SparseMatrix};
use crate::picard::{Pic2Group, StrictMor, Track};
use std::collections::BTreeMap;

/// Levels `0..=N`. `cofaces[n][i] = d_i: A^n → A^{n+1}` for `0 ≤ i ≤ n+1`;
/// `tracks[n][(i, j)]` is the homomorphism `C0^n → C1^{n+2}` of
/// `α_{i,j}: d_i d_j ⇒ d_{j+1} d_i` (`i ≤ j`), absent entries are zero.
#[derive(Clone, Debug)]
pub struct PrecosimplicialPic {
    objects: Vec<Pic2Group>,
    cofaces: Vec<Vec<StrictMor>>,
    tracks: Vec<BTreeMap<(usize, usize), SparseMatrix>>,
}

fn zero_into(g: &FgAbGroup, m: &SparseMatrix) -> bool {
    m.columns().iter().all(|c| g.is_zero_element(c))
}

impl PrecosimplicialPic {
    pub fn new(
        objects: Vec<Pic2Group>,
        cofaces: Vec<Vec<StrictMor>>,
        tracks: Vec<BTreeMap<(usize, usize), SparseMatrix>>,
    ) -> Result<Self> {
        let x = Self::new_unchecked(objects, cofaces, tracks)?;
        x.validate()?;
        Ok(x)
    }

    /// Shape checks only.
    pub fn new_unchecked(
        objects: Vec<Pic2Group>,
        cofaces: Vec<Vec<StrictMor>>,
        mut tracks: Vec<BTreeMap<(usize, usize), SparseMatrix>>,
    ) -> Result<Self> {
        let levels = objects.len();
        if levels == 0 {
            return Err(Error::Input("a precosimplicial object needs level 0".into()));
        }
        if cofaces.len() != levels - 1 {
            return Err(Error::Dimension(format!("{levels} levels need {} coface families", levels - 1)));
        }
        for (n, fam) in cofaces.iter().enumerate() {
            if fam.len() != n + 2 {
                return Err(Error::Dimension(format!("level {n} needs {} cofaces, got {}", n + 2, fam.len())));
            }
            for (i, d) in fam.iter().enumerate() {
                let (a, b) = (&objects[n], &objects[n + 1]);
                if d.f0().ncols() != a.c0().ngens()
                    || d.f0().nrows() != b.c0().ngens()
                    || d.f1().ncols() != a.c1().ngens()
                    || d.f1().nrows() != b.c1().ngens()
                {
                    return Err(Error::Dimension(format!("coface d_{i} at level {n} has the wrong shape")));
                }
            }
        }
        tracks.resize(levels.saturating_sub(2), BTreeMap::new());
        for (n, fam) in tracks.iter().enumerate() {
            for (&(i, j), t) in fam {
                if i > j || j > n + 1 {
                    return Err(Error::Input(format!("track α_{{{i},{j}}} at level {n} is out of range")));
                }
                if t.ncols() != objects[n].c0().ngens() || t.nrows() != objects[n + 2].c1().ngens() {
                    return Err(Error::Dimension(format!("track α_{{{i},{j}}} at level {n} has the wrong shape")));
                }
            }
        }
        Ok(PrecosimplicialPic { objects, cofaces, tracks })
    }

    /// Cosimplicial abelian groups as a precosimplicial 2-group with `C1 = 0`
    /// and zero tracks; the cosimplicial identities must hold exactly.
    pub fn discrete_lift(groups: Vec<FgAbGroup>, cofaces: Vec<Vec<GroupHom>>) -> Result<Self> {
        let objects: Vec<Pic2Group> = groups.iter().map(Pic2Group::discrete).collect();
        let mut fams = Vec::new();
        for (n, fam) in cofaces.into_iter().enumerate() {
            let mut out = Vec::new();
            for (i, h) in fam.into_iter().enumerate() {
                if n + 1 >= objects.len() {
                    return Err(Error::Dimension(format!("coface d_{i} leaves the truncation at level {n}")));
                }
                let m = StrictMor::new(&objects[n], &objects[n + 1], SparseMatrix::zero(0, 0), h.matrix().clone())
                    .map_err(|e| Error::Invariant(format!("coface d_{i} at level {n}: {e}")))?;
                out.push(m);
            }
            fams.push(out);
        }
        Self::new(objects, fams, vec![])
    }

    /// Truncation level `N`.
    pub fn top(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn object(&self, n: usize) -> &Pic2Group {
        &self.objects[n]
    }

    pub fn coface(&self, n: usize, i: usize) -> &StrictMor {
        &self.cofaces[n][i]
    }

    pub fn track(&self, n: usize, i: usize, j: usize) -> SparseMatrix {
        self.tracks
            .get(n)
            .and_then(|f| f.get(&(i, j)).cloned())
            .unwrap_or_else(|| SparseMatrix::zero(self.objects[n + 2].c1().ngens(), self.objects[n].c0().ngens()))
    }

    pub fn validate(&self) -> Result<()> {
        for (n, fam) in self.cofaces.iter().enumerate() {
            for (i, d) in fam.iter().enumerate() {
                StrictMor::chain_map(d.source(), d.target(), d.f1().clone(), d.f0().clone())
                    .map_err(|e| Error::Invariant(format!("coface d_{i} at level {n}: {e}")))?;
            }
        }
        for n in 0..self.top().saturating_sub(1) {
            for j in 0..=n + 1 {
                for i in 0..=j {
                    let lhs = self.coface(n + 1, i).compose(self.coface(n, j));
                    let rhs = self.coface(n + 1, j + 1).compose(self.coface(n, i));
                    Track::new(&lhs, &rhs, self.track(n, i, j))
                        .map_err(|e| Error::Invariant(format!("α_{{{i},{j}}} at level {n}: {e}")))?;
                }
            }
        }
        for n in 0..self.top().saturating_sub(2) {
            for k in 0..=n + 1 {
                for j in 0..=k {
                    for i in 0..=j {
                        if !self.hexagon(n, i, j, k) {
                            return Err(Error::Invariant(format!(
                                "coherence hexagon fails for (i, j, k) = ({i}, {j}, {k}) at level {n}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Both composites `d_i d_j d_k ⇒ d_{k+2} d_{j+1} d_i` agree.
    fn hexagon(&self, n: usize, i: usize, j: usize, k: usize) -> bool {
        let d = |lvl: usize, a: usize| self.coface(lvl, a);
        let left = d(n + 2, i)
            .f1()
            .compose(&self.track(n, j, k))
            .add(&self.track(n + 1, i, k + 1).compose(d(n, j).f0()))
            .add(&d(n + 2, k + 2).f1().compose(&self.track(n, i, j)));
        let right = self
            .track(n + 1, i, j)
            .compose(d(n, k).f0())
            .add(&d(n + 2, j + 1).f1().compose(&self.track(n, i, k)))
            .add(&self.track(n + 1, j + 1, k + 1).compose(d(n, i).f0()));
        zero_into(self.objects[n + 3].c1(), &left.sub(&right))
    }

    /// `d^n = Σ (-1)^i d_i`, `s^n = Σ_{i ≤ j} (-1)^{i+j} α_{i,j}`.
    pub fn to_complex(&self) -> Result<TwoCochainComplex> {
        let c = self.to_complex_unchecked()?;
        c.validate().map_err(|e| Error::Invariant(format!("assembled complex is invalid: {e}")))?;
        Ok(c)
    }

    /// Alternating sums without validating the result.
    pub(crate) fn to_complex_unchecked(&self) -> Result<TwoCochainComplex> {
        let mut diffs = Vec::new();
        for (n, fam) in self.cofaces.iter().enumerate() {
            let mut acc = StrictMor::zero(&self.objects[n], &self.objects[n + 1]);
            for (i, d) in fam.iter().enumerate() {
                acc = if i % 2 == 0 { acc.add(d) } else { acc.add(&d.neg()) };
            }
            diffs.push(acc);
        }
        let mut tracks = Vec::new();
        for n in 0..self.top().saturating_sub(1) {
            let mut s = SparseMatrix::zero(self.objects[n + 2].c1().ngens(), self.objects[n].c0().ngens());
            if let Some(fam) = self.tracks.get(n) {
                for (&(i, j), t) in fam {
                    s = if (i + j) % 2 == 0 { s.add(t) } else { s.sub(t) };
                }
            }
            tracks.push(s);
        }
        TwoCochainComplex::new_unchecked(0, self.objects.clone(), diffs, tracks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex2::tu_cohomology;
    use crate::fgab::Int;

    /// Constant object over the nerve of the total cover of a point by one
    /// set: every level `A`, every coface the identity.
    fn constant(a: &Pic2Group, top: usize) -> PrecosimplicialPic {
        let objects = vec![a.clone(); top + 1];
        let cofaces = (0..top).map(|n| vec![StrictMor::identity(a); n + 2]).collect();
        PrecosimplicialPic::new(objects, cofaces, vec![]).unwrap()
    }

    #[test]
    fn constant_phi_over_a_point() {
        let c = constant(&Pic2Group::phi(), 5).to_complex().unwrap();
        assert_eq!(tu_cohomology(&c, 0).invariants(), vec![Int::from(0)]);
        for n in 1..=3 {
            assert!(tu_cohomology(&c, n).is_trivial(), "degree {n}");
        }
    }

    #[test]
    fn discrete_two_set_cover_of_a_point() {
        // nerve of {U, U}: level n has 2^{n+1} tuples, d_i deletes entry i
        let top = 4;
        let tuples = |n: usize| -> Vec<Vec<usize>> {
            (0..1usize << (n + 1)).map(|m| (0..=n).map(|k| (m >> k) & 1).collect()).collect()
        };
        let g = FgAbGroup::cyclic(6);
        let groups: Vec<FgAbGroup> =
            (0..=top).map(|n| FgAbGroup::direct_sum(&vec![&g; tuples(n).len()])).collect();
        let mut cofaces = Vec::new();
        for n in 0..top {
            let src = tuples(n);
            let tgt = tuples(n + 1);
            let mut fam = Vec::new();
            for i in 0..=n + 1 {
                let rows: Vec<Vec<i64>> = tgt
                    .iter()
                    .map(|t| {
                        let mut face = t.clone();
                        face.remove(i);
                        src.iter().map(|s| i64::from(*s == face)).collect()
                    })
                    .collect();
                fam.push(GroupHom::from_rows_i64(groups[n].clone(), groups[n + 1].clone(), &rows).unwrap());
            }
            cofaces.push(fam);
        }
        let x = PrecosimplicialPic::discrete_lift(groups, cofaces).unwrap();
        let c = x.to_complex().unwrap();
        assert_eq!(tu_cohomology(&c, 0).invariants(), vec![Int::from(6)]);
        for n in 1..=2 {
            assert!(tu_cohomology(&c, n).is_trivial(), "degree {n}");
        }
    }

    #[test]
    fn nonstrict_tracks_and_hexagon() {
        // A = K(id_Z) at every level with cofaces d_i = (i+1)·id: tracks
        // α_{i,j} = ((j+2)(i+1) - (i+1)(j+1)) · id = (i+1) · id are forced
        let z = FgAbGroup::free(1);
        let a = Pic2Group::from_hom(&GroupHom::identity(&z));
        let top = 4;
        let mul = |m: i64| {
            let s = SparseMatrix::from_rows_i64(&[vec![m]], 1);
            StrictMor::new(&a, &a, s.clone(), s).unwrap()
        };
        let cofaces: Vec<Vec<StrictMor>> = (0..top).map(|n| (0..n + 2).map(|i| mul(i as i64 + 1)).collect()).collect();
        let tracks: Vec<BTreeMap<(usize, usize), SparseMatrix>> = (0..top - 1)
            .map(|n| {
                let mut m = BTreeMap::new();
                for j in 0..=n + 1 {
                    for i in 0..=j {
                        m.insert((i, j), SparseMatrix::from_rows_i64(&[vec![i as i64 + 1]], 1));
                    }
                }
                m
            })
            .collect();
        let x = PrecosimplicialPic::new(vec![a.clone(); top + 1], cofaces, tracks).unwrap();
        x.to_complex().unwrap();
    }

    #[test]
    fn hexagon_violation_is_reported() {
        // Z ⊕ ΣZ has d = 0, so any track between identical strict maps is
        // valid on its own; a lone α_{0,0} breaks coherence at (0, 0, 0)
        let z = FgAbGroup::free(1);
        let a = Pic2Group::product(&[Pic2Group::discrete(&z), Pic2Group::suspension(&z)]);
        let top = 3;
        let cofaces: Vec<Vec<StrictMor>> = (0..top).map(|n| vec![StrictMor::identity(&a); n + 2]).collect();
        let mut tracks = vec![BTreeMap::new(); top - 1];
        tracks[0].insert((0, 0), SparseMatrix::from_rows_i64(&[vec![1]], 1));
        let msg = PrecosimplicialPic::new(vec![a.clone(); top + 1], cofaces.clone(), tracks).unwrap_err().to_string();
        assert!(msg.contains("(0, 0, 0)"), "{msg}");
        // the same constant on every track is coherent
        let all: Vec<BTreeMap<(usize, usize), SparseMatrix>> = (0..top - 1)
            .map(|n| {
                let mut m = BTreeMap::new();
                for j in 0..=n + 1 {
                    for i in 0..=j {
                        m.insert((i, j), SparseMatrix::from_rows_i64(&[vec![1]], 1));
                    }
                }
                m
            })
            .collect();
        PrecosimplicialPic::new(vec![a; top + 1], cofaces, all).unwrap().to_complex().unwrap();
    }
}
