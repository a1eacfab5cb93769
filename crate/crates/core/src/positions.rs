//! Position sets, index sets, and the partial maps between them.
//!
//! For arity n, a position set picks n of the 2n slots of a doubled tuple.
//! Comparing where two position sets agree slot-by-slot (index agreement)
//! and how one re-ranks inside the other (the position map) is the entire
//! combinatorial content of the derived-partition analysis; everything else
//! is bookkeeping over these two quantities.

use std::fmt;

use crate::error::{Error, Result};
use crate::subsets::enumerate_ksubsets;

/// An n-element subset of {0, .., 2n-1}: which slots of a doubled tuple a
/// selection reads. Any such set automatically satisfies i <= p[i] <= n+i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PositionSet {
    arity: usize,
    positions: Vec<usize>,
}

impl PositionSet {
    pub fn new(arity: usize, positions: Vec<usize>) -> Result<Self> {
        if positions.len() != arity {
            return Err(Error::WrongSubsetSize {
                expected: arity,
                actual: positions.len(),
            });
        }
        for i in 0..positions.len() {
            if positions[i] >= 2 * arity {
                return Err(Error::PositionOutOfRange {
                    position: positions[i],
                    bound: 2 * arity,
                });
            }
            if i > 0 && positions[i] <= positions[i - 1] {
                return Err(Error::NotStrictlyIncreasing { position: i });
            }
        }
        Ok(PositionSet { arity, positions })
    }

    /// All position sets for the arity, in lexicographic order. This order
    /// fixes the numbering used by signatures and schedules everywhere.
    pub fn enumerate(arity: usize) -> Vec<PositionSet> {
        enumerate_ksubsets(2 * arity, arity)
            .expect("n <= 2n always")
            .map(|s| PositionSet {
                arity,
                positions: s.members().to_vec(),
            })
            .collect()
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn at(&self, i: usize) -> usize {
        self.positions[i]
    }
}

impl fmt::Display for PositionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.positions.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// A subset of the tuple indices {0, .., n-1}. The empty set means "no
/// coordinate is pinned" (constant behavior); the full set pins everything
/// (injective behavior).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    arity: usize,
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new(arity: usize, indices: Vec<usize>) -> Result<Self> {
        for i in 0..indices.len() {
            if indices[i] >= arity {
                return Err(Error::IndexOutOfRange {
                    index: indices[i],
                    arity,
                });
            }
            if i > 0 && indices[i] <= indices[i - 1] {
                return Err(Error::NotStrictlyIncreasing { position: i });
            }
        }
        Ok(IndexSet { arity, indices })
    }

    pub fn empty(arity: usize) -> Self {
        IndexSet {
            arity,
            indices: Vec::new(),
        }
    }

    pub fn full(arity: usize) -> Self {
        IndexSet {
            arity,
            indices: (0..arity).collect(),
        }
    }

    /// Every subset of {0, .., arity-1}, ordered by cardinality then
    /// lexicographically — the tie-break order used when one index set has
    /// to be singled out among several that pass.
    pub fn enumerate_all(arity: usize) -> Vec<IndexSet> {
        let mut all = Vec::new();
        for k in 0..=arity {
            for s in enumerate_ksubsets(arity, k).expect("k <= arity") {
                all.push(IndexSet {
                    arity,
                    indices: s.members().to_vec(),
                });
            }
        }
        all
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn intersect(&self, other: &IndexSet) -> IndexSet {
        debug_assert_eq!(self.arity, other.arity);
        IndexSet {
            arity: self.arity,
            indices: self
                .indices
                .iter()
                .copied()
                .filter(|&i| other.contains(i))
                .collect(),
        }
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, "}}")
    }
}

/// Slots where two position sets agree outright: {i : p[i] = q[i]}.
pub fn index_agreement(p: &PositionSet, q: &PositionSet) -> Result<IndexSet> {
    if p.arity() != q.arity() {
        return Err(Error::WrongSubsetSize {
            expected: p.arity(),
            actual: q.arity(),
        });
    }
    let indices = (0..p.arity())
        .filter(|&i| p.at(i) == q.at(i))
        .collect();
    Ok(IndexSet {
        arity: p.arity(),
        indices,
    })
}

/// The partial re-ranking map from p into q: defined on {i : p[i] in q},
/// sending i to the position of p[i] inside q. Always strictly increasing
/// on its domain; its fixed points are exactly the index agreement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialPositionMap {
    entries: Vec<(usize, usize)>,
}

impl PartialPositionMap {
    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn domain(&self) -> Vec<usize> {
        self.entries.iter().map(|&(i, _)| i).collect()
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.entries
            .iter()
            .find(|&&(d, _)| d == i)
            .map(|&(_, v)| v)
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        self.entries
            .iter()
            .filter(|&&(i, v)| i == v)
            .map(|&(i, _)| i)
            .collect()
    }
}

pub fn position_map(p: &PositionSet, q: &PositionSet) -> Result<PartialPositionMap> {
    if p.arity() != q.arity() {
        return Err(Error::WrongSubsetSize {
            expected: p.arity(),
            actual: q.arity(),
        });
    }
    let mut entries = Vec::new();
    for i in 0..p.arity() {
        if let Ok(j) = q.positions().binary_search(&p.at(i)) {
            entries.push((i, j));
        }
    }
    Ok(PartialPositionMap { entries })
}

/// Number of unordered pairs over m items.
pub fn pair_count(m: usize) -> usize {
    m * (m - 1) / 2
}

/// Flat index of the unordered pair {i, j}, i < j, in lexicographic pair
/// order (0,1), (0,2), .., (0,m-1), (1,2), ..
pub fn pair_index(i: usize, j: usize, m: usize) -> usize {
    debug_assert!(i < j && j < m);
    i * m - i * (i + 1) / 2 + (j - i - 1)
}

/// Inverse of pair_index.
pub fn pair_at(index: usize, m: usize) -> (usize, usize) {
    let mut i = 0;
    let mut base = 0;
    loop {
        let row = m - 1 - i;
        if index < base + row {
            return (i, i + 1 + index - base);
        }
        base += row;
        i += 1;
    }
}

/// Precomputed pair table for an arity: the lexicographic position-set list
/// plus, per unordered pair, the slotwise agreement set. Built once per
/// analysis; everything downstream indexes into it.
#[derive(Debug, Clone)]
pub struct PositionPairs {
    arity: usize,
    sets: Vec<PositionSet>,
    agreements: Vec<IndexSet>,
}

impl PositionPairs {
    pub fn new(arity: usize) -> Self {
        let sets = PositionSet::enumerate(arity);
        let m = sets.len();
        let mut agreements = Vec::with_capacity(pair_count(m));
        for i in 0..m {
            for j in i + 1..m {
                agreements.push(
                    index_agreement(&sets[i], &sets[j]).expect("arities match by construction"),
                );
            }
        }
        PositionPairs {
            arity,
            sets,
            agreements,
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn sets(&self) -> &[PositionSet] {
        &self.sets
    }

    pub fn set_count(&self) -> usize {
        self.sets.len()
    }

    pub fn pair_count(&self) -> usize {
        self.agreements.len()
    }

    pub fn pair(&self, index: usize) -> (&PositionSet, &PositionSet) {
        let (i, j) = pair_at(index, self.sets.len());
        (&self.sets[i], &self.sets[j])
    }

    pub fn agreement(&self, index: usize) -> &IndexSet {
        &self.agreements[index]
    }

    pub fn index_of(&self, p: &PositionSet) -> Option<usize> {
        self.sets.iter().position(|s| s == p)
    }
}
