//! Colimits of strict diagrams of 2-groups over finite directed posets.

use super::morphism::StrictMor;
use super::pic::Pic2Group;
use crate::error::{Error, Result};
use crate::fgab::{FgAbGroup, GroupHom, SparseMatrix, SparseVec};
use std::collections::{BTreeMap, VecDeque};

/// A functor from a finite poset to 2-groups with strict transition maps.
/// Composites are required to agree exactly (identity coherence tracks).
#[derive(Clone, Debug)]
pub struct DirectedDiagram {
    objects: Vec<Pic2Group>,
    le: Vec<Vec<bool>>,
    /// transition map for every comparable pair `i < j`
    maps: BTreeMap<(usize, usize), StrictMor>,
}

impl DirectedDiagram {
    /// `edges` generate the order; transition maps along different paths
    /// must coincide.
    pub fn new(objects: Vec<Pic2Group>, edges: Vec<(usize, usize, StrictMor)>) -> Result<Self> {
        let n = objects.len();
        if n == 0 {
            return Err(Error::Input("empty index poset".into()));
        }
        let mut adj: Vec<Vec<(usize, StrictMor)>> = vec![Vec::new(); n];
        for (i, j, m) in edges {
            if i >= n || j >= n || i == j {
                return Err(Error::Input(format!("bad edge {i} -> {j}")));
            }
            adj[i].push((j, m));
        }
        let mut le = vec![vec![false; n]; n];
        let mut maps: BTreeMap<(usize, usize), StrictMor> = BTreeMap::new();
        for s in 0..n {
            le[s][s] = true;
            let mut best: BTreeMap<usize, StrictMor> = BTreeMap::new();
            best.insert(s, StrictMor::identity(&objects[s]));
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let mu = best[&u].clone();
                for (v, m) in &adj[u] {
                    let comp = m.compose(&mu);
                    match best.get(v) {
                        Some(prev) => {
                            if !prev.equals(&comp) {
                                return Err(Error::Invariant(format!(
                                    "transition maps {s} -> {v} differ along two paths"
                                )));
                            }
                        }
                        None => {
                            best.insert(*v, comp);
                            queue.push_back(*v);
                        }
                    }
                }
            }
            for (v, m) in best {
                le[s][v] = true;
                if v != s {
                    maps.insert((s, v), m);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::Input(format!("order relation has a cycle through {i} and {j}")));
                }
            }
        }
        let d = DirectedDiagram { objects, le, maps };
        for i in 0..n {
            for j in 0..n {
                if d.upper_bound(i, j).is_none() {
                    return Err(Error::Input(format!("index poset is not directed: {i} and {j} have no upper bound")));
                }
            }
        }
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.le[i][j]
    }

    pub fn object(&self, i: usize) -> &Pic2Group {
        &self.objects[i]
    }

    /// Transition map `i → j` for `i ≤ j`.
    pub fn map(&self, i: usize, j: usize) -> StrictMor {
        if i == j {
            StrictMor::identity(&self.objects[i])
        } else {
            self.maps[&(i, j)].clone()
        }
    }

    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        self.maps.keys().cloned().collect()
    }

    /// Least index that is an upper bound of both.
    pub fn upper_bound(&self, i: usize, j: usize) -> Option<usize> {
        (0..self.len()).find(|&k| self.le[i][k] && self.le[j][k])
    }

    /// Sub-diagram on the given indices (kept in the given order).
    pub fn restrict(&self, keep: &[usize]) -> Result<DirectedDiagram> {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(k, i)| (*i, k)).collect();
        let objects = keep.iter().map(|i| self.objects[*i].clone()).collect();
        let mut edges = Vec::new();
        for (&(i, j), m) in &self.maps {
            if let (Some(&a), Some(&b)) = (pos.get(&i), pos.get(&j)) {
                edges.push((a, b, m.clone()));
            }
        }
        DirectedDiagram::new(objects, edges)
    }

    pub fn is_cofinal(&self, keep: &[usize]) -> bool {
        (0..self.len()).all(|i| keep.iter().any(|&k| self.le[i][k]))
    }

    /// `C0 = ⊕ C0_i / ⟨ι_i x - ι_j r_ij x⟩`, likewise `C1`, with the block
    /// differential and the braiding realized from the blockwise self-pairing.
    pub fn colimit(&self) -> Colimit {
        let n = self.len();
        let mut off0 = vec![0usize; n + 1];
        let mut off1 = vec![0usize; n + 1];
        for i in 0..n {
            off0[i + 1] = off0[i] + self.objects[i].c0().ngens();
            off1[i + 1] = off1[i] + self.objects[i].c1().ngens();
        }
        let c0_sum = FgAbGroup::direct_sum(&self.objects.iter().map(|p| p.c0()).collect::<Vec<_>>());
        let c1_sum = FgAbGroup::direct_sum(&self.objects.iter().map(|p| p.c1()).collect::<Vec<_>>());
        let mut rel0 = Vec::new();
        let mut rel1 = Vec::new();
        for (&(i, j), m) in &self.maps {
            for x in 0..self.objects[i].c0().ngens() {
                rel0.push(SparseVec::unit(off0[i] + x).sub(&m.f0().col(x).shifted(off0[j])));
            }
            for x in 0..self.objects[i].c1().ngens() {
                rel1.push(SparseVec::unit(off1[i] + x).sub(&m.f1().col(x).shifted(off1[j])));
            }
        }
        let c0 = c0_sum.quotient_by(rel0);
        let c1 = c1_sum.quotient_by(rel1);
        let ds: Vec<&SparseMatrix> = self.objects.iter().map(|p| p.d().matrix()).collect();
        let d = GroupHom::new_unchecked(c1.clone(), c0.clone(), SparseMatrix::block_diag(&ds));
        let qs: Vec<SparseMatrix> = self.objects.iter().map(|p| p.q_matrix()).collect();
        let q = SparseMatrix::block_diag(&qs.iter().collect::<Vec<_>>());
        let group = Pic2Group::realize(c1, c0, d, &q);
        let injections = (0..n)
            .map(|i| {
                let p = &self.objects[i];
                let f1 = SparseMatrix::from_columns(
                    group.c1().ngens(),
                    (0..p.c1().ngens()).map(|x| SparseVec::unit(off1[i] + x)).collect(),
                );
                let f0 = SparseMatrix::from_columns(
                    group.c0().ngens(),
                    (0..p.c0().ngens()).map(|x| SparseVec::unit(off0[i] + x)).collect(),
                );
                StrictMor::new_unchecked(p, &group, f1, f0, false)
            })
            .collect();
        Colimit { group, injections }
    }
}

#[derive(Clone, Debug)]
pub struct Colimit {
    pub group: Pic2Group,
    pub injections: Vec<StrictMor>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::Int;

    #[test]
    fn constant_chain_of_phi() {
        let p = Pic2Group::phi();
        let id = StrictMor::identity(&p);
        let d = DirectedDiagram::new(vec![p.clone(), p.clone(), p.clone()], vec![(0, 1, id.clone()), (1, 2, id)])
            .unwrap();
        assert_eq!(d.colimit().group.qdata(), p.qdata());
    }

    #[test]
    fn doubling_chain() {
        let z = FgAbGroup::free(1);
        let k = Pic2Group::discrete(&z);
        let two = StrictMor::new(&k, &k, SparseMatrix::zero(0, 0), SparseMatrix::from_rows_i64(&[vec![2]], 1)).unwrap();
        let edges = (0..3).map(|i| (i, i + 1, two.clone())).collect();
        let d = DirectedDiagram::new(vec![k.clone(); 4], edges).unwrap();
        let c = d.colimit().group;
        assert_eq!(c.pi0().invariants(), vec![Int::from(0)]);
        // restricting to the cofinal top element changes nothing
        assert!(d.is_cofinal(&[3]));
        assert_eq!(d.restrict(&[3]).unwrap().colimit().group.qdata(), c.qdata());
    }

    #[test]
    fn non_directed_rejected() {
        let p = Pic2Group::phi();
        assert!(DirectedDiagram::new(vec![p.clone(), p], vec![]).is_err());
    }
}
