//! Finite (Alexandrov) spaces: opens are down-sets of the specialization order,
//! stored as bitsets over at most 128 points.

use crate::error::{Error, Result};

/// A set of points.
pub type OpenSet = u128;

pub const MAX_POINTS: usize = 128;

pub fn bit(x: usize) -> OpenSet {
    1u128 << x
}

pub fn members(u: OpenSet) -> Vec<usize> {
    (0..MAX_POINTS).filter(|&x| u & bit(x) != 0).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSpace {
    names: Vec<String>,
    /// `below[x] = {y : y ≤ x}`, the minimal open neighbourhood of `x`
    below: Vec<OpenSet>,
}

impl FiniteSpace {
    /// `relations` are pairs `(x, y)` meaning `x ≤ y`; the order is their
    /// reflexive-transitive closure, which must be antisymmetric.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Input("a space needs at least one point".into()));
        }
        if n > MAX_POINTS {
            return Err(Error::Input(format!("spaces are limited to {MAX_POINTS} points, got {n}")));
        }
        let mut seen = std::collections::BTreeSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(Error::Input(format!("duplicate point name {name:?}")));
            }
        }
        let mut below: Vec<OpenSet> = (0..n).map(bit).collect();
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(Error::Input(format!("order relation ({x}, {y}) names a missing point")));
            }
            below[y] |= bit(x);
        }
        loop {
            let mut changed = false;
            for x in 0..n {
                let mut acc = below[x];
                for y in members(below[x]) {
                    acc |= below[y];
                }
                if acc != below[x] {
                    below[x] = acc;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        for x in 0..n {
            for y in members(below[x]) {
                if y != x && below[y] & bit(x) != 0 {
                    return Err(Error::Input(format!(
                        "not a poset: {} ≤ {} and {} ≤ {}",
                        names[x], names[y], names[y], names[x]
                    )));
                }
            }
        }
        Ok(FiniteSpace { names, below })
    }

    pub fn point() -> Self {
        Self::new(vec!["p".into()], &[]).unwrap()
    }

    pub fn discrete(n: usize) -> Self {
        Self::new((0..n).map(|i| format!("p{i}")).collect(), &[]).unwrap()
    }

    /// Four points `a, b, c, d` with `a, b ≤ c` and `a, b ≤ d`.
    pub fn pseudocircle() -> Self {
        let names = ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect();
        Self::new(names, &[(0, 2), (1, 2), (0, 3), (1, 3)]).unwrap()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.below[y] & bit(x) != 0
    }

    /// `U_x^min = {y : y ≤ x}`.
    pub fn min_open(&self, x: usize) -> OpenSet {
        self.below[x]
    }

    pub fn whole(&self) -> OpenSet {
        if self.len() == MAX_POINTS {
            OpenSet::MAX
        } else {
            bit(self.len()) - 1
        }
    }

    pub fn is_open(&self, u: OpenSet) -> bool {
        u & !self.whole() == 0 && members(u).iter().all(|&x| self.below[x] & !u == 0)
    }

    /// Smallest open containing `u`.
    pub fn open_hull(&self, u: OpenSet) -> OpenSet {
        members(u).iter().fold(0, |acc, &x| acc | self.below[x])
    }

    /// Nonempty intersections of minimal opens, together with the whole space:
    /// every open any pipeline evaluates a prestack on. Sorted by size, then bits.
    pub fn open_family(&self) -> Vec<OpenSet> {
        let mut fam: std::collections::BTreeSet<OpenSet> = self.below.iter().cloned().collect();
        fam.insert(self.whole());
        loop {
            let cur: Vec<OpenSet> = fam.iter().cloned().collect();
            let mut grew = false;
            for (i, &a) in cur.iter().enumerate() {
                for &b in &cur[i + 1..] {
                    let c = a & b;
                    if c != 0 && fam.insert(c) {
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let mut out: Vec<OpenSet> = fam.into_iter().collect();
        out.sort_by_key(|u| (u.count_ones(), *u));
        out
    }

    /// Human-readable open: `{a,b,c}`.
    pub fn format_open(&self, u: OpenSet) -> String {
        let parts: Vec<&str> = members(u).iter().map(|&x| self.name(x)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Pairs `y < x` (covering or not).
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in members(self.below[x]) {
                if y != x {
                    out.push((y, x));
                }
            }
        }
        out
    }
}
