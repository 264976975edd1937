//! Finite long sequences of abelian groups with per-spot exactness.

use crate::fgab::{exact_at, FgAbGroup, GroupHom};

#[derive(Clone, Debug)]
pub struct LongSequence {
    pub labels: Vec<String>,
    pub groups: Vec<FgAbGroup>,
    /// `maps[k]: groups[k] → groups[k + 1]`
    pub maps: Vec<GroupHom>,
    /// `exact[k]` is exactness at `groups[k + 1]`
    pub exact: Vec<bool>,
}

impl LongSequence {
    pub fn new(labels: Vec<String>, groups: Vec<FgAbGroup>, maps: Vec<GroupHom>) -> Self {
        assert_eq!(labels.len(), groups.len());
        assert_eq!(maps.len() + 1, groups.len());
        let exact = maps.windows(2).map(|w| exact_at(&w[0], &w[1]).is_exact()).collect();
        LongSequence { labels, groups, maps, exact }
    }

    pub fn is_exact(&self) -> bool {
        self.exact.iter().all(|b| *b)
    }

    /// Labels of the spots where exactness fails.
    pub fn failures(&self) -> Vec<&str> {
        self.exact
            .iter()
            .enumerate()
            .filter(|(_, e)| !**e)
            .map(|(k, _)| self.labels[k + 1].as_str())
            .collect()
    }

    /// Drops leading and trailing zero groups (exactness flags are kept for
    /// the surviving interior spots).
    pub fn trimmed(&self) -> LongSequence {
        let n = self.groups.len();
        let first = (0..n).find(|&k| !self.groups[k].is_trivial());
        let Some(first) = first else {
            return LongSequence { labels: vec![], groups: vec![], maps: vec![], exact: vec![] };
        };
        let last = (0..n).rev().find(|&k| !self.groups[k].is_trivial()).unwrap();
        LongSequence {
            labels: self.labels[first..=last].to_vec(),
            groups: self.groups[first..=last].to_vec(),
            maps: self.maps[first..last].to_vec(),
            exact: if last > first { self.exact[first..last - 1].to_vec() } else { vec![] },
        }
    }
}
