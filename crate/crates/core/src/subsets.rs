//! Sorted subsets and their lexicographic enumeration.
//!
//! Every subset in the engine is kept as a strictly increasing member list,
//! and every enumeration of k-subsets runs in lexicographic order on that
//! list. This single ordering convention is what makes search results,
//! atom numbering and report output reproducible byte for byte.

use std::fmt;

use crate::error::{Error, Result};

/// Binomial coefficient; 0 when k > n. Wide on purpose: bound arithmetic
/// (signature-space sizes, subset counts) overflows u64 early.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A finite set of naturals stored strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KSubset {
    members: Vec<usize>,
}

impl KSubset {
    pub fn new(members: Vec<usize>) -> Result<Self> {
        for i in 1..members.len() {
            if members[i] <= members[i - 1] {
                return Err(Error::NotStrictlyIncreasing { position: i });
            }
        }
        Ok(KSubset { members })
    }

    pub fn empty() -> Self {
        KSubset { members: Vec::new() }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member at position i (0-based within the sorted order).
    pub fn at(&self, i: usize) -> usize {
        self.members[i]
    }

    pub fn contains(&self, v: usize) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &KSubset) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    /// {self[i] : i in positions}. Positions must be sorted and in range;
    /// the result is then automatically sorted.
    pub fn select(&self, positions: &[usize]) -> KSubset {
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        KSubset {
            members: positions.iter().map(|&i| self.members[i]).collect(),
        }
    }

    pub fn intersect(&self, other: &KSubset) -> KSubset {
        KSubset {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| other.contains(m))
                .collect(),
        }
    }

    pub fn union(&self, other: &KSubset) -> KSubset {
        let mut members: Vec<usize> = self.members.clone();
        members.extend_from_slice(&other.members);
        members.sort_unstable();
        members.dedup();
        KSubset { members }
    }

    /// Remove one member, insert another, keep order. Used by witness shifts.
    pub fn replace(&self, out: usize, inn: usize) -> Result<KSubset> {
        let mut members: Vec<usize> = self
            .members
            .iter()
            .copied()
            .filter(|&m| m != out)
            .collect();
        members.push(inn);
        members.sort_unstable();
        members.dedup();
        if members.len() != self.members.len() {
            return Err(Error::NotStrictlyIncreasing { position: 0 });
        }
        KSubset::new(members)
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// Lexicographic iterator over all k-subsets of {0, .., universe-1}.
pub fn enumerate_ksubsets(universe: usize, k: usize) -> Result<KSubsets> {
    if k > universe {
        return Err(Error::SubsetTooLarge {
            subset: k,
            universe,
        });
    }
    Ok(KSubsets {
        universe,
        current: Some((0..k).collect()),
    })
}

pub struct KSubsets {
    universe: usize,
    current: Option<Vec<usize>>,
}

impl Iterator for KSubsets {
    type Item = KSubset;

    fn next(&mut self) -> Option<KSubset> {
        let cur = self.current.take()?;
        let out = KSubset {
            members: cur.clone(),
        };
        let k = cur.len();
        // Standard successor: bump the rightmost member that still has room.
        let mut next = cur;
        let mut i = k;
        while i > 0 {
            i -= 1;
            if next[i] < self.universe - (k - i) {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        // k == 0 yields the empty subset exactly once.
        Some(out)
    }
}

/// Lexicographic rank of a sorted k-subset among all k-subsets of the universe.
pub fn lex_rank(universe: usize, members: &[usize]) -> u128 {
    let k = members.len();
    let mut rank: u128 = 0;
    let mut start = 0;
    for (i, &m) in members.iter().enumerate() {
        for v in start..m {
            rank += binomial(universe - 1 - v, k - 1 - i);
        }
        start = m + 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_edges() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(10, 4), 210);
        assert_eq!(binomial(3, 5), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(6, 3), 20);
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all: Vec<KSubset> = enumerate_ksubsets(5, 3).unwrap().collect();
        assert_eq!(all.len() as u128, binomial(5, 3));
        assert_eq!(all[0].members(), &[0, 1, 2]);
        assert_eq!(all[1].members(), &[0, 1, 3]);
        assert_eq!(all.last().unwrap().members(), &[2, 3, 4]);
        for w in all.windows(2) {
            assert!(w[0] < w[1], "{} !< {}", w[0], w[1]);
        }
    }

    #[test]
    fn enumeration_rejects_oversized_k() {
        assert!(matches!(
            enumerate_ksubsets(3, 4),
            Err(Error::SubsetTooLarge { .. })
        ));
    }

    #[test]
    fn empty_subset_enumerates_once() {
        let all: Vec<KSubset> = enumerate_ksubsets(4, 0).unwrap().collect();
        assert_eq!(all.len(), 1);
        assert!(all[0].is_empty());
    }

    #[test]
    fn lex_rank_matches_enumeration_order() {
        for (i, s) in enumerate_ksubsets(7, 3).unwrap().enumerate() {
            assert_eq!(lex_rank(7, s.members()), i as u128);
        }
    }

    #[test]
    fn subset_construction_rejects_disorder() {
        assert!(KSubset::new(vec![1, 1]).is_err());
        assert!(KSubset::new(vec![3, 2]).is_err());
        assert!(KSubset::new(vec![0, 2, 7]).is_ok());
    }

    #[test]
    fn select_and_replace() {
        let z = KSubset::new(vec![16, 32, 33, 34]).unwrap();
        assert_eq!(z.select(&[0, 1]).members(), &[16, 32]);
        assert_eq!(z.select(&[2, 3]).members(), &[33, 34]);
        let shifted = z.replace(32, 25).unwrap();
        assert_eq!(shifted.members(), &[16, 25, 33, 34]);
        assert!(z.replace(16, 33).is_err()); // collides with an existing member
    }
}
