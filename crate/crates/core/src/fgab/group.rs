//! Finitely presented abelian groups `Z^m / <relators>`.

use super::lattice::Echelon;
use super::smith::{smith_normal_form, IntMatrix};
use super::sparse::{reduce_mod, Int, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// A finitely generated abelian group presented by generators and relators.
///
/// Cloning is cheap; presentation data is shared. The Smith data (a diagonal
/// coordinate system and the invariant factors) is computed on first use.
#[derive(Clone)]
pub struct FgAbGroup {
    inner: Arc<GroupData>,
}

struct GroupData {
    ngens: usize,
    relations: Vec<SparseVec>,
    smith: OnceLock<SmithData>,
}

/// `x ↦ to_diag · x` is an isomorphism onto `⊕ Z/diag_i` (a zero entry is a
/// free summand); `from_diag` is a section of it.
#[derive(Clone, Debug)]
pub struct SmithData {
    pub to_diag: SparseMatrix,
    pub from_diag: SparseMatrix,
    pub diag: Vec<Int>,
    /// invariant factors in divisibility order, unit factors dropped, zeros last
    pub invariants: Vec<Int>,
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgAbGroup({} gens, {} rels; {})", self.ngens(), self.relations().len(), self)
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_invariants(&self.invariants()))
    }
}

/// Renders invariant factors as `Z^2 + Z/2 + Z/6`; the empty list is `0`.
pub fn format_invariants(inv: &[Int]) -> String {
    let free = inv.iter().filter(|d| d.is_zero()).count();
    let mut parts = Vec::new();
    match free {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in inv.iter().filter(|d| !d.is_zero()) {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Parses the output of [`format_invariants`] back into invariant factors.
pub fn parse_invariants(s: &str) -> Result<Vec<Int>> {
    let s = s.trim();
    if s == "0" {
        return Ok(Vec::new());
    }
    let mut free = 0usize;
    let mut tors = Vec::new();
    for part in s.split('+').map(str::trim) {
        if part == "Z" {
            free += 1;
        } else if let Some(r) = part.strip_prefix("Z^") {
            free += r.parse::<usize>().map_err(|_| Error::Parse(format!("bad rank in {part:?}")))?;
        } else if let Some(d) = part.strip_prefix("Z/") {
            let d: Int = d.parse().map_err(|_| Error::Parse(format!("bad order in {part:?}")))?;
            tors.push(d);
        } else {
            return Err(Error::Parse(format!("unrecognised group term {part:?}")));
        }
    }
    let mut out = normalize_chain(tors);
    out.extend(std::iter::repeat(Int::zero()).take(free));
    Ok(out)
}

/// Turns a list of cyclic orders into a divisibility chain, dropping units.
/// Zeros (free summands) are moved to the end.
pub fn normalize_chain(mut ds: Vec<Int>) -> Vec<Int> {
    let free = ds.iter().filter(|d| d.is_zero()).count();
    ds.retain(|d| !d.is_zero() && !d.abs().is_one());
    for d in ds.iter_mut() {
        *d = d.abs();
    }
    ds.sort();
    if !ds.windows(2).all(|w| w[1].is_multiple_of(&w[0])) {
        ds = match small_factored_chain(&ds) {
            Some(c) => c,
            None => pairwise_chain(ds),
        };
    }
    ds.extend(std::iter::repeat(Int::zero()).take(free));
    ds
}

fn pairwise_chain(mut ds: Vec<Int>) -> Vec<Int> {
    let n = ds.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = ds[i].gcd(&ds[j]);
            let l = ds[i].lcm(&ds[j]);
            ds[i] = g;
            ds[j] = l;
        }
    }
    ds.retain(|d| !d.is_one());
    ds
}

/// Chain from the prime-power decomposition; `None` if some entry is too
/// large to factor by trial division.
fn small_factored_chain(ds: &[Int]) -> Option<Vec<Int>> {
    use num_traits::ToPrimitive;
    const LIMIT: u64 = 1 << 40;
    let mut cache: BTreeMap<u64, Vec<(u64, u32)>> = BTreeMap::new();
    let mut exps: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for d in ds {
        let v = d.to_u64().filter(|&v| v < LIMIT)?;
        let fs = cache.entry(v).or_insert_with(|| factor(v));
        for &(p, e) in fs.iter() {
            exps.entry(p).or_default().push(e);
        }
    }
    let len = exps.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![Int::one(); len];
    for (p, mut es) in exps {
        es.sort_unstable_by(|a, b| b.cmp(a));
        for (k, e) in es.into_iter().enumerate() {
            out[len - 1 - k] *= Int::from(p).pow(e);
        }
    }
    Some(out)
}

fn factor(mut v: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v % p == 0 {
            let mut e = 0;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if v > 1 {
        out.push((v, 1));
    }
    out
}

impl FgAbGroup {
    /// `Z^ngens / <relations>`; relators are vectors in the generators.
    pub fn new(ngens: usize, relations: Vec<SparseVec>) -> Result<Self> {
        for (k, r) in relations.iter().enumerate() {
            if r.max_index().map_or(false, |m| m >= ngens) {
                return Err(Error::Dimension(format!(
                    "relator {k} mentions generator {} but the group has {ngens}",
                    r.max_index().unwrap()
                )));
            }
        }
        Ok(Self::new_unchecked(ngens, relations))
    }

    pub(crate) fn new_unchecked(ngens: usize, mut relations: Vec<SparseVec>) -> Self {
        relations.retain(|r| !r.is_zero());
        FgAbGroup { inner: Arc::new(GroupData { ngens, relations, smith: OnceLock::new() }) }
    }

    /// Presentation from a row-major relation matrix with `free_rank` columns.
    pub fn present(free_rank: usize, relations: &[Vec<i64>]) -> Result<Self> {
        let mut rels = Vec::with_capacity(relations.len());
        for (k, r) in relations.iter().enumerate() {
            if r.len() != free_rank {
                return Err(Error::Dimension(format!(
                    "relation row {k} has {} entries, expected {free_rank}",
                    r.len()
                )));
            }
            rels.push(SparseVec::from_i64(r));
        }
        Self::new(free_rank, rels)
    }

    pub fn free(rank: usize) -> Self {
        Self::new_unchecked(rank, Vec::new())
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: i64) -> Self {
        Self::new_unchecked(1, vec![SparseVec::single(0, Int::from(order))])
    }

    /// `⊕ Z/d_i`, a zero entry meaning `Z`.
    pub fn from_orders(orders: &[Int]) -> Self {
        let rels = orders.iter().enumerate().map(|(i, d)| SparseVec::single(i, d.clone())).collect();
        Self::new_unchecked(orders.len(), rels)
    }

    pub fn direct_sum(groups: &[&FgAbGroup]) -> Self {
        let mut rels = Vec::new();
        let mut off = 0;
        for g in groups {
            rels.extend(g.relations().iter().map(|r| r.shifted(off)));
            off += g.ngens();
        }
        Self::new_unchecked(off, rels)
    }

    pub fn ngens(&self) -> usize {
        self.inner.ngens
    }

    pub fn relations(&self) -> &[SparseVec] {
        &self.inner.relations
    }

    /// Same generators with additional relators.
    pub fn quotient_by(&self, extra: impl IntoIterator<Item = SparseVec>) -> Self {
        let mut rels = self.relations().to_vec();
        rels.extend(extra);
        Self::new_unchecked(self.ngens(), rels)
    }

    pub fn smith(&self) -> &SmithData {
        self.inner.smith.get_or_init(|| compute_smith(self.ngens(), self.relations()))
    }

    /// Invariant factors `d_1 | d_2 | …` with unit factors dropped; `0` entries
    /// (free summands) come last.
    pub fn invariants(&self) -> Vec<Int> {
        self.smith().invariants.clone()
    }

    pub fn free_rank(&self) -> usize {
        self.smith().diag.iter().filter(|d| d.is_zero()).count()
    }

    pub fn torsion(&self) -> Vec<Int> {
        self.smith().invariants.iter().filter(|d| !d.is_zero()).cloned().collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.smith().diag.is_empty()
    }

    pub fn is_isomorphic(&self, other: &FgAbGroup) -> bool {
        self.smith().invariants == other.smith().invariants
    }

    /// Order of the group, or `None` if infinite.
    pub fn order(&self) -> Option<Int> {
        let s = self.smith();
        if s.diag.iter().any(Zero::is_zero) {
            None
        } else {
            Some(s.diag.iter().fold(Int::one(), |a, d| a * d))
        }
    }

    /// Canonical representative of the class of `x`, in diagonal coordinates.
    pub fn normalize(&self, x: &SparseVec) -> SparseVec {
        let s = self.smith();
        let y = s.to_diag.apply(x);
        SparseVec::from_pairs(y.iter().map(|(i, a)| (*i, reduce_mod(a, &s.diag[*i]))).collect())
    }

    /// Canonical representative expressed back in the generators.
    pub fn normalize_in_gens(&self, x: &SparseVec) -> SparseVec {
        self.smith().from_diag.apply(&self.normalize(x))
    }

    pub fn is_zero_element(&self, x: &SparseVec) -> bool {
        self.normalize(x).is_zero()
    }

    pub fn elements_equal(&self, x: &SparseVec, y: &SparseVec) -> bool {
        self.is_zero_element(&x.sub(y))
    }

    /// Order of an element, or `None` if it has infinite order.
    pub fn element_order(&self, x: &SparseVec) -> Option<Int> {
        let s = self.smith();
        let y = self.normalize(x);
        let mut ord = Int::one();
        for (i, a) in y.iter() {
            let d = &s.diag[*i];
            if d.is_zero() {
                return None;
            }
            ord = ord.lcm(&(d / a.gcd(d)));
        }
        Some(ord)
    }

    /// Lattice of relators, echelonized.
    pub fn relation_lattice(&self) -> Echelon {
        Echelon::from_vectors(self.relations())
    }
}

fn compute_smith(m: usize, relations: &[SparseVec]) -> SmithData {
    let ech = Echelon::from_vectors(relations);
    // Eliminate generators that a relator expresses through later ones.
    let pivots = ech.pivots();
    let unit_cols: BTreeMap<usize, ()> =
        pivots.iter().filter(|(_, p)| p.is_one()).map(|(c, _)| (*c, ())).collect();
    let mut surv_index = vec![usize::MAX; m];
    let mut survivors = Vec::new();
    for c in 0..m {
        if !unit_cols.contains_key(&c) {
            surv_index[c] = survivors.len();
            survivors.push(c);
        }
    }
    let mut proj: Vec<SparseVec> = vec![SparseVec::new(); m];
    for c in (0..m).rev() {
        if unit_cols.contains_key(&c) {
            let row = ech.row_at(c).unwrap();
            let mut acc = SparseVec::new();
            for (j, a) in row.iter() {
                if *j != c {
                    acc = acc.add_scaled(&proj[*j], &-a);
                }
            }
            proj[c] = acc;
        } else {
            proj[c] = SparseVec::unit(surv_index[c]);
        }
    }
    let remaining: Vec<SparseVec> = pivots
        .iter()
        .filter(|(_, p)| !p.is_one())
        .map(|(c, _)| {
            let row = ech.row_at(*c).unwrap();
            let mut acc = SparseVec::new();
            for (j, a) in row.iter() {
                acc = acc.add_scaled(&proj[*j], a);
            }
            acc
        })
        .filter(|v| !v.is_zero())
        .collect();

    // Connected components of survivors linked by shared relators.
    let ns = survivors.len();
    let mut parent: Vec<usize> = (0..ns).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for r in &remaining {
        let idx: Vec<usize> = r.iter().map(|(i, _)| *i).collect();
        for w in idx.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comp_of = vec![0usize; ns];
    let mut comps: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for s in 0..ns {
        let root = find(&mut parent, s);
        comp_of[s] = root;
        comps.entry(root).or_default().push(s);
    }
    let mut comp_rels: BTreeMap<usize, Vec<&SparseVec>> = BTreeMap::new();
    for r in &remaining {
        let root = comp_of[r.leading().unwrap().0];
        comp_rels.entry(root).or_default().push(r);
    }

    // Per component: relators span the rows d_i w_i with w_i the rows of V⁻¹,
    // so coordinates in the basis w are y = Vᵀ x.
    // to_rows[k] maps survivor coords to kept coordinate k; from_cols[k] is its section.
    let mut to_rows: Vec<SparseVec> = Vec::new();
    let mut from_cols: Vec<SparseVec> = Vec::new();
    let mut diag: Vec<Int> = Vec::new();
    for (root, gens) in &comps {
        let rels = comp_rels.get(root).map(Vec::as_slice).unwrap_or(&[]);
        if rels.is_empty() {
            for &g in gens {
                to_rows.push(SparseVec::unit(g));
                from_cols.push(SparseVec::unit(survivors[g]));
                diag.push(Int::zero());
            }
            continue;
        }
        let local: BTreeMap<usize, usize> = gens.iter().enumerate().map(|(k, g)| (*g, k)).collect();
        let mut mat = IntMatrix::zeros(rels.len(), gens.len());
        for (r, rel) in rels.iter().enumerate() {
            for (i, a) in rel.iter() {
                mat.data[r][local[i]] = a.clone();
            }
        }
        let snf = smith_normal_form(&mat);
        for k in 0..gens.len() {
            let d = if k < rels.len() { snf.d.data[k][k].clone() } else { Int::zero() };
            if d.is_one() {
                continue;
            }
            let row = SparseVec::from_pairs(
                gens.iter().enumerate().map(|(l, g)| (*g, snf.v.data[l][k].clone())).collect(),
            );
            let col = SparseVec::from_pairs(
                gens.iter().enumerate().map(|(l, g)| (survivors[*g], snf.v_inv.data[k][l].clone())).collect(),
            );
            to_rows.push(row);
            from_cols.push(col);
            diag.push(d);
        }
    }

    let r = diag.len();
    let surv_to_diag = SparseMatrix::from_columns(ns, to_rows).transpose();
    let to_cols: Vec<SparseVec> = proj.iter().map(|p| surv_to_diag.apply(p)).collect();
    let to_diag = SparseMatrix::from_columns(r, to_cols);
    let from_diag = SparseMatrix::from_columns(m, from_cols);
    let invariants = normalize_chain(diag.clone());
    SmithData { to_diag, from_diag, diag, invariants }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|x| Int::from(*x)).collect()
    }

    #[test]
    fn cyclic_six_normalizes() {
        let g = FgAbGroup::present(1, &[vec![6]]).unwrap();
        assert_eq!(g.normalize(&SparseVec::from_i64(&[8])), SparseVec::from_i64(&[2]));
        assert_eq!(g.invariants(), ints(&[6]));
    }

    #[test]
    fn z2_plus_z3_is_z6() {
        let g = FgAbGroup::present(2, &[vec![2, 0], vec![0, 3]]).unwrap();
        assert_eq!(g.invariants(), ints(&[6]));
        assert_eq!(g.to_string(), "Z/6");
    }

    #[test]
    fn free_group_display() {
        assert_eq!(FgAbGroup::present(1, &[]).unwrap().invariants(), ints(&[0]));
        assert_eq!(FgAbGroup::free(1).to_string(), "Z");
        assert_eq!(FgAbGroup::zero().to_string(), "0");
        assert!(FgAbGroup::zero().invariants().is_empty());
    }

    #[test]
    fn mixed_display_and_parse() {
        let g = FgAbGroup::from_orders(&ints(&[0, 6, 2, 0]));
        assert_eq!(g.to_string(), "Z^2 + Z/2 + Z/6");
        assert_eq!(parse_invariants(&g.to_string()).unwrap(), g.invariants());
    }

    #[test]
    fn unit_relations_are_eliminated() {
        // <a,b,c | a - 2b, b + c, 4c>  ≅  Z/4
        let g = FgAbGroup::present(3, &[vec![1, -2, 0], vec![0, 1, 1], vec![0, 0, 4]]).unwrap();
        assert_eq!(g.invariants(), ints(&[4]));
        assert!(g.is_zero_element(&SparseVec::from_i64(&[0, 4, 0])));
        assert!(g.is_zero_element(&SparseVec::from_i64(&[2, -4, 0])));
        assert!(!g.is_zero_element(&SparseVec::from_i64(&[0, 0, 1])));
        assert!(g.elements_equal(&SparseVec::from_i64(&[0, 1, 0]), &SparseVec::from_i64(&[0, 0, 3])));
    }

    #[test]
    fn dimension_mismatch_rejected() {
        assert!(FgAbGroup::present(2, &[vec![1]]).is_err());
    }

    #[test]
    fn element_orders() {
        let g = FgAbGroup::from_orders(&ints(&[4, 6]));
        assert_eq!(g.element_order(&SparseVec::from_i64(&[2, 3])), Some(Int::from(2)));
        assert_eq!(g.order(), Some(Int::from(24)));
    }
}
