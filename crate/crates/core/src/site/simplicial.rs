//! Finite simplicial complexes and their face posets.

use super::cover::Cover;
use super::space::{bit, FiniteSpace, OpenSet};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    nvertices: usize,
    /// sorted vertex lists, ordered by dimension then lexicographically
    simplices: Vec<Vec<usize>>,
}

fn sort_simplices(set: BTreeSet<Vec<usize>>) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = set.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    v
}

impl SimplicialComplex {
    /// A downward-closed family of nonempty simplices; every vertex must occur.
    pub fn new(nvertices: usize, simplices: Vec<Vec<usize>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for s in simplices {
            let mut s = s;
            s.sort_unstable();
            s.dedup();
            if s.is_empty() {
                return Err(Error::Input("empty simplex".into()));
            }
            if let Some(&v) = s.iter().find(|&&v| v >= nvertices) {
                return Err(Error::Input(format!("simplex uses vertex {v} but there are {nvertices} vertices")));
            }
            set.insert(s);
        }
        for s in &set {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !set.contains(&f) {
                        return Err(Error::Input(format!("simplex family is not closed under faces: {s:?} lacks {f:?}")));
                    }
                }
            }
        }
        for v in 0..nvertices {
            if !set.contains(&vec![v]) {
                return Err(Error::Input(format!("vertex {v} is not a simplex")));
            }
        }
        let c = SimplicialComplex { nvertices, simplices: sort_simplices(set) };
        if c.simplices.len() > super::space::MAX_POINTS {
            return Err(Error::Input(format!(
                "face poset would have {} points; the limit is {}",
                c.simplices.len(),
                super::space::MAX_POINTS
            )));
        }
        Ok(c)
    }

    /// Closure of the given facets.
    pub fn from_facets(nvertices: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            let k = f.len();
            for mask in 1u32..(1 << k) {
                set.insert((0..k).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect::<Vec<_>>());
            }
        }
        for v in 0..nvertices {
            set.insert(vec![v]);
        }
        Self::new(nvertices, set.into_iter().collect())
    }

    pub fn triangle_boundary() -> Self {
        Self::from_facets(3, &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
    }

    /// Boundary of the 3-simplex.
    pub fn sphere() -> Self {
        Self::from_facets(4, &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap()
    }

    /// The 6-vertex triangulation of the real projective plane.
    pub fn projective_plane() -> Self {
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        Self::from_facets(6, &facets.iter().map(|f| f.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    pub fn nvertices(&self) -> usize {
        self.nvertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn dim(&self) -> usize {
        self.simplices.iter().map(|s| s.len() - 1).max().unwrap_or(0)
    }

    /// Number of `k`-simplices for `k = 0..=dim`.
    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.dim() + 1];
        for s in &self.simplices {
            c[s.len() - 1] += 1;
        }
        c
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        let mut s = s.to_vec();
        s.sort_unstable();
        self.simplices.iter().position(|t| *t == s)
    }

    /// Points are simplices, `σ ≤ τ` iff `τ ⊆ σ`; the minimal open of a
    /// simplex is its open star.
    pub fn face_poset(&self) -> FiniteSpace {
        let names = self
            .simplices
            .iter()
            .map(|s| s.iter().map(|v| format!("v{v}")).collect::<Vec<_>>().join(""))
            .collect();
        let mut rel = Vec::new();
        for (i, s) in self.simplices.iter().enumerate() {
            for (j, t) in self.simplices.iter().enumerate() {
                if i != j && t.len() + 1 == s.len() && t.iter().all(|v| s.contains(v)) {
                    rel.push((i, j));
                }
            }
        }
        FiniteSpace::new(names, &rel).expect("face posets are posets")
    }

    /// Open star of a vertex inside the face poset.
    pub fn star(&self, v: usize) -> OpenSet {
        self.simplices.iter().enumerate().filter(|(_, s)| s.contains(&v)).fold(0, |acc, (i, _)| acc | bit(i))
    }

    /// Cover of the face poset by open stars of vertices, indexed by vertices.
    pub fn star_cover(&self) -> Cover {
        let opens = (0..self.nvertices).map(|v| self.star(v)).collect();
        let labels = (0..self.nvertices).map(|v| format!("v{v}")).collect();
        Cover::new(labels, opens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_standard_complexes() {
        assert_eq!(SimplicialComplex::triangle_boundary().counts(), vec![3, 3]);
        assert_eq!(SimplicialComplex::sphere().counts(), vec![4, 6, 4]);
        assert_eq!(SimplicialComplex::projective_plane().counts(), vec![6, 15, 10]);
    }

    #[test]
    fn unclosed_family_rejected() {
        let r = SimplicialComplex::new(3, vec![vec![0], vec![1], vec![2], vec![0, 1, 2]]);
        assert!(r.unwrap_err().to_string().contains("not closed under faces"));
    }

    #[test]
    fn stars_are_minimal_opens_of_vertices() {
        let k = SimplicialComplex::sphere();
        let x = k.face_poset();
        for v in 0..4 {
            let p = k.index_of(&[v]).unwrap();
            assert_eq!(x.min_open(p), k.star(v));
        }
    }
}
