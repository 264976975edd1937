//! Incremental row echelon form of integer lattices, with optional tracking of
//! how each basis row is combined from the inserted vectors.

use super::sparse::{Int, SparseVec};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug)]
struct Row {
    v: SparseVec,
    t: SparseVec,
}

/// Echelon basis of a sublattice of `Z^dim`. Every stored row has a positive
/// leading coefficient and distinct leading columns.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, Row>,
    /// leading column ↦ position among the rows, rebuilt after inserts
    index: std::sync::OnceLock<BTreeMap<usize, usize>>,
}

/// Result of reducing a vector against an echelon basis.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub remainder: SparseVec,
    /// combination of the tracked transforms that was subtracted
    pub combination: SparseVec,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: BTreeMap::new(), index: std::sync::OnceLock::new() }
    }

    /// Builds the echelon basis of the lattice spanned by `gens`.
    pub fn from_vectors<'a>(gens: impl IntoIterator<Item = &'a SparseVec>) -> Self {
        let mut e = Echelon::new();
        for g in gens {
            e.insert(g.clone(), SparseVec::new());
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Inserts `v` whose tracked transform is `t`. If `v` is already in the
    /// span, the returned vector is the transform combination that reduced it
    /// to zero (a relation among the inserted vectors).
    pub fn insert(&mut self, mut v: SparseVec, mut t: SparseVec) -> Option<SparseVec> {
        self.index.take();
        loop {
            let (c, a) = match v.leading() {
                None => return Some(t),
                Some((c, a)) => (c, a.clone()),
            };
            let Some(row) = self.rows.get_mut(&c) else {
                if a.is_negative() {
                    v = v.neg();
                    t = t.neg();
                }
                self.rows.insert(c, Row { v, t });
                return None;
            };
            let p = row.v.leading().expect("stored rows are nonzero").1.clone();
            if (&a % &p).is_zero() {
                let q = -(&a / &p);
                v = v.add_scaled(&row.v, &q);
                t = t.add_scaled(&row.t, &q);
                continue;
            }
            // 2x2 unimodular step: new pivot row gets gcd, the other loses column c
            let ext = p.extended_gcd(&a);
            let (g, x, y) = (ext.gcd, ext.x, ext.y);
            let (pg, ag) = (&p / &g, &a / &g);
            let new_v = row.v.combine(&x, &v, &y);
            let new_t = row.t.combine(&x, &t, &y);
            let rest_v = row.v.combine(&ag, &v, &-&pg);
            let rest_t = row.t.combine(&ag, &t, &-&pg);
            let (new_v, new_t) = if new_v.leading().map_or(false, |(_, l)| l.is_negative()) {
                (new_v.neg(), new_t.neg())
            } else {
                (new_v, new_t)
            };
            row.v = new_v;
            row.t = new_t;
            v = rest_v;
            t = rest_t;
        }
    }

    /// Forward reduction with floor division at each pivot. The remainder is
    /// zero iff `v` lies in the lattice; for a fixed basis it is a canonical
    /// representative of `v` modulo the lattice.
    pub fn reduce(&self, v: &SparseVec) -> Reduction {
        let mut rem = v.clone();
        let mut comb = SparseVec::new();
        let mut from = 0usize;
        loop {
            let next = rem.iter().find(|(i, _)| *i >= from).map(|(i, a)| (*i, a.clone()));
            let Some((c, a)) = next else { break };
            if let Some(row) = self.rows.get(&c) {
                let p = row.v.leading().unwrap().1;
                let q = a.div_floor(p);
                if !q.is_zero() {
                    rem = rem.add_scaled(&row.v, &-&q);
                    comb = comb.add_scaled(&row.t, &q);
                }
            }
            from = c + 1;
        }
        Reduction { remainder: rem, combination: comb }
    }

    /// Lattice membership test.
    pub fn contains(&self, v: &SparseVec) -> bool {
        self.solve(v).is_some()
    }

    /// Writes `v` as an integer combination of the basis rows (indexed in
    /// increasing leading-column order) if it lies in the lattice.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let index = self.index.get_or_init(|| self.rows.keys().enumerate().map(|(k, c)| (*c, k)).collect());
        let mut rem = v.clone();
        let mut coords = Vec::new();
        while let Some((c, a)) = rem.leading().map(|(c, a)| (c, a.clone())) {
            let row = self.rows.get(&c)?;
            let p = row.v.leading().unwrap().1;
            if !(&a % p).is_zero() {
                return None;
            }
            let q = &a / p;
            rem = rem.add_scaled(&row.v, &-&q);
            coords.push((index[&c], q));
        }
        Some(SparseVec::from_pairs(coords))
    }

    /// Like [`coordinates`](Self::coordinates) but returns the combination of
    /// tracked transforms instead.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        let mut rem = v.clone();
        let mut comb = SparseVec::new();
        while let Some((c, a)) = rem.leading().map(|(c, a)| (c, a.clone())) {
            let row = self.rows.get(&c)?;
            let p = row.v.leading().unwrap().1;
            if !(&a % p).is_zero() {
                return None;
            }
            let q = &a / p;
            rem = rem.add_scaled(&row.v, &-&q);
            comb = comb.add_scaled(&row.t, &q);
        }
        Some(comb)
    }

    /// Basis rows in increasing leading-column order.
    pub fn basis(&self) -> Vec<SparseVec> {
        self.rows.values().map(|r| r.v.clone()).collect()
    }

    pub fn transforms(&self) -> Vec<SparseVec> {
        self.rows.values().map(|r| r.t.clone()).collect()
    }

    /// `(leading column, pivot)` pairs in increasing column order.
    pub fn pivots(&self) -> Vec<(usize, Int)> {
        self.rows.iter().map(|(c, r)| (*c, r.v.leading().unwrap().1.clone())).collect()
    }

    pub fn pivot_is_unit(&self, col: usize) -> bool {
        self.rows.get(&col).map_or(false, |r| r.v.leading().unwrap().1.is_one())
    }

    pub fn row_at(&self, col: usize) -> Option<&SparseVec> {
        self.rows.get(&col).map(|r| &r.v)
    }
}

/// Generators of `{x : Σ x_j cols_j ∈ span(extra)}`, i.e. the integer kernel of
/// `x ↦ Σ x_j cols_j` taken modulo the lattice spanned by `extra`.
pub fn kernel_modulo(cols: &[SparseVec], extra: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new();
    for r in extra {
        e.insert(r.clone(), SparseVec::new());
    }
    let mut out = Vec::new();
    for (j, c) in cols.iter().enumerate() {
        if let Some(rel) = e.insert(c.clone(), SparseVec::unit(j)) {
            if !rel.is_zero() {
                out.push(rel);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> SparseVec {
        SparseVec::from_i64(x)
    }

    #[test]
    fn gcd_step_keeps_lattice() {
        let e = Echelon::from_vectors(&[v(&[4, 1]), v(&[6, 0])]);
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[4, 1])));
        assert!(e.contains(&v(&[6, 0])));
        assert!(e.contains(&v(&[2, -1])));
        assert!(!e.contains(&v(&[1, 0])));
        assert!(!e.contains(&v(&[0, 1])));
        assert!(e.contains(&v(&[0, 3])));
    }

    #[test]
    fn reduce_is_canonical() {
        let e = Echelon::from_vectors(&[v(&[2, 0]), v(&[0, 3])]);
        let a = e.reduce(&v(&[5, 7])).remainder;
        let b = e.reduce(&v(&[-1, 1])).remainder;
        assert_eq!(a, b);
        assert_eq!(a, v(&[1, 1]));
    }

    #[test]
    fn kernel_of_row_vector() {
        // x + 2y + 3z = 0
        let cols = [v(&[1]), v(&[2]), v(&[3])];
        let k = kernel_modulo(&cols, &[]);
        assert_eq!(k.len(), 2);
        for g in &k {
            let s: Int = g.iter().map(|(i, a)| a * Int::from([1, 2, 3][*i])).sum();
            assert!(s.is_zero());
        }
        let ke = Echelon::from_vectors(&k);
        assert!(ke.contains(&v(&[-2, 1, 0])));
        assert!(ke.contains(&v(&[-3, 0, 1])));
        assert!(ke.contains(&v(&[1, 1, -1])));
    }

    #[test]
    fn kernel_modulo_torsion() {
        // x ↦ 2x into Z/4: kernel is 2Z
        let k = kernel_modulo(&[v(&[2])], &[v(&[4])]);
        let ke = Echelon::from_vectors(&k);
        assert!(ke.contains(&v(&[2])));
        assert!(!ke.contains(&v(&[1])));
    }

    #[test]
    fn coordinates_round_trip() {
        let e = Echelon::from_vectors(&[v(&[3, 1, 0]), v(&[0, 2, 5]), v(&[1, 1, 1])]);
        let target = v(&[7, 3, 9]);
        if let Some(c) = e.coordinates(&target) {
            let basis = e.basis();
            let mut acc = SparseVec::new();
            for (k, q) in c.iter() {
                acc = acc.add_scaled(&basis[*k], q);
            }
            assert_eq!(acc, target);
        }
    }
}
