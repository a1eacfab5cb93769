//! The ambient ground set and its rank metric.
//!
//! All distances here are measured in *ranks*: the distance between two
//! members is the number of ground-set members strictly between them plus
//! one, which equals the difference of their positions in the sorted order.
//! Sparsity of a subset is the smallest such distance over the subset
//! extended by the ground minimum; the reach from x to y is how far y's new
//! members stray above their closest anchor in x.

use std::fmt;

use crate::error::{Error, Result};
use crate::subsets::KSubset;

/// A nonempty, strictly increasing ground set. Ranks are positions in the
/// sorted order; element lookup is O(1) through a dense rank table when the
/// element span is comparable to the set size, and binary search otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankedSet {
    elements: Vec<usize>,
    rank_table: Option<Vec<u32>>,
}

const NO_RANK: u32 = u32::MAX;

impl RankedSet {
    pub fn new(elements: Vec<usize>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        for i in 1..elements.len() {
            if elements[i] <= elements[i - 1] {
                return Err(Error::NotStrictlyIncreasing { position: i });
            }
        }
        let span = elements[elements.len() - 1] - elements[0] + 1;
        let rank_table = if span <= 8 * elements.len() + 1024 {
            let base = elements[0];
            let mut table = vec![NO_RANK; span];
            for (r, &e) in elements.iter().enumerate() {
                table[e - base] = r as u32;
            }
            Some(table)
        } else {
            None
        };
        Ok(RankedSet {
            elements,
            rank_table,
        })
    }

    /// The contiguous ground set {0, 1, .., n-1}.
    pub fn range(n: usize) -> Result<Self> {
        RankedSet::new((0..n).collect())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction rejects empty sets
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Element at the given rank. Panics out of range; callers bound-check.
    pub fn at(&self, rank: usize) -> usize {
        self.elements[rank]
    }

    pub fn min_element(&self) -> usize {
        self.elements[0]
    }

    pub fn rank(&self, element: usize) -> Option<usize> {
        match &self.rank_table {
            Some(table) => {
                let base = self.elements[0];
                if element < base || element - base >= table.len() {
                    return None;
                }
                match table[element - base] {
                    NO_RANK => None,
                    r => Some(r as usize),
                }
            }
            None => self.elements.binary_search(&element).ok(),
        }
    }

    pub fn contains(&self, element: usize) -> bool {
        self.rank(element).is_some()
    }

    pub fn require_rank(&self, element: usize) -> Result<usize> {
        self.rank(element).ok_or(Error::NotAMember { element })
    }

    /// Rank of a member that must lie in the tail (everything above the
    /// minimum); the sparsity and reach quantities are only defined there.
    pub fn require_tail_rank(&self, element: usize) -> Result<usize> {
        let r = self.require_rank(element)?;
        if r == 0 {
            return Err(Error::NotInTail { element });
        }
        Ok(r)
    }
}

/// Sparsity of a subset. The empty subset gets the infinite marker, which
/// orders above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Sparsity {
    Finite(usize),
    Infinite,
}

impl fmt::Display for Sparsity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sparsity::Finite(v) => write!(f, "{v}"),
            Sparsity::Infinite => write!(f, "inf"),
        }
    }
}

/// A required sparsity threshold of the form base^exponent. The value is
/// carried alongside so comparisons stay exact even when the power no
/// longer fits in machine words (then nothing finite can meet it).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SparsityBound {
    pub base: usize,
    pub exponent: usize,
    pub value: Option<u128>,
}

impl SparsityBound {
    pub fn power(base: usize, exponent: usize) -> Self {
        let value = u32::try_from(exponent)
            .ok()
            .and_then(|e| (base as u128).checked_pow(e));
        SparsityBound {
            base,
            exponent,
            value,
        }
    }

    pub fn exact(v: usize) -> Self {
        SparsityBound {
            base: v,
            exponent: 1,
            value: Some(v as u128),
        }
    }

    pub fn is_met_by(&self, s: Sparsity) -> bool {
        match (s, self.value) {
            (Sparsity::Infinite, _) => true,
            (Sparsity::Finite(_), None) => false,
            (Sparsity::Finite(v), Some(t)) => v as u128 >= t,
        }
    }

    /// Whether a ground set of the given size can possibly hold a subset
    /// this sparse (the first tail rank alone must reach the bound).
    pub fn feasible_for(&self, ground_len: usize) -> bool {
        match self.value {
            None => false,
            Some(t) => ground_len as u128 > t,
        }
    }
}

impl fmt::Display for SparsityBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}^{}", self.base, self.exponent),
        }
    }
}

/// Rank distance between two members: |rank(a) - rank(b)|. Equivalently the
/// size of the half-open member interval between them.
pub fn rho(ground: &RankedSet, a: usize, b: usize) -> Result<usize> {
    let ra = ground.require_rank(a)?;
    let rb = ground.require_rank(b)?;
    Ok(ra.abs_diff(rb))
}

/// Minimum pairwise rank distance over the subset extended by the ground
/// minimum. Empty subsets are infinitely sparse.
pub fn sparsity(ground: &RankedSet, x: &KSubset) -> Result<Sparsity> {
    if x.is_empty() {
        return Ok(Sparsity::Infinite);
    }
    let mut prev = 0; // rank of the ground minimum
    let mut best = usize::MAX;
    for &m in x.members() {
        let r = ground.require_tail_rank(m)?;
        // Members arrive sorted, so consecutive rank gaps realize the minimum.
        best = best.min(r - prev);
        prev = r;
    }
    Ok(Sparsity::Finite(best))
}

/// How far the members of `to` outside `from` stray above their anchors:
/// 0 when to is contained in from, otherwise the maximum over new members b
/// of the rank distance from the largest element of from+ below b up to b.
pub fn reach(ground: &RankedSet, from: &KSubset, to: &KSubset) -> Result<usize> {
    // Anchor ranks: the ground minimum plus every member of `from`.
    let mut anchor_ranks = Vec::with_capacity(from.len() + 1);
    anchor_ranks.push(0);
    for &m in from.members() {
        anchor_ranks.push(ground.require_tail_rank(m)?);
    }
    let mut best = 0;
    for &b in to.members() {
        let rb = ground.require_tail_rank(b)?;
        if from.contains(b) {
            continue;
        }
        // Largest anchor strictly below b; rank 0 is always available.
        let anchor = match anchor_ranks.binary_search(&rb) {
            Ok(_) => unreachable!("b is not an anchor: it is outside from and above the minimum"),
            Err(pos) => anchor_ranks[pos - 1],
        };
        best = best.max(rb - anchor);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ks(v: &[usize]) -> KSubset {
        KSubset::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rho_counts_interval_members() {
        let x = RankedSet::new(vec![3, 7, 20, 21, 25]).unwrap();
        assert_eq!(rho(&x, 7, 25).unwrap(), 3);
        assert_eq!(rho(&x, 3, 21).unwrap(), 3);
        assert_eq!(rho(&x, 25, 7).unwrap(), 3); // symmetric
        assert_eq!(rho(&x, 20, 20).unwrap(), 0);
        assert!(matches!(
            rho(&x, 4, 25),
            Err(Error::NotAMember { element: 4 })
        ));
    }

    #[test]
    fn rho_equals_symmetric_difference_count() {
        // The rank-table shortcut must agree with the definitional count of
        // ground members in the half-open interval between a and b.
        let x = RankedSet::new(vec![0, 2, 3, 9, 10, 14, 40, 41, 55]).unwrap();
        for &a in x.elements() {
            for &b in x.elements() {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                let literal = x.elements().iter().filter(|&&e| lo <= e && e < hi).count();
                assert_eq!(rho(&x, a, b).unwrap(), literal);
            }
        }
    }

    #[test]
    fn sparsity_examples() {
        let x = RankedSet::new(vec![3, 7, 20, 21, 25]).unwrap();
        assert_eq!(
            sparsity(&x, &ks(&[7, 21])).unwrap(),
            Sparsity::Finite(1) // the pair {3,7} inside {3,7,21} is adjacent
        );
        let y = RankedSet::range(60).unwrap();
        assert_eq!(sparsity(&y, &ks(&[16, 32])).unwrap(), Sparsity::Finite(16));
        assert_eq!(sparsity(&y, &KSubset::empty()).unwrap(), Sparsity::Infinite);
        // Members must avoid the ground minimum.
        assert!(matches!(
            sparsity(&x, &ks(&[3, 20])),
            Err(Error::NotInTail { element: 3 })
        ));
    }

    #[test]
    fn infinite_sparsity_dominates() {
        assert!(Sparsity::Infinite > Sparsity::Finite(usize::MAX));
        assert!(Sparsity::Finite(3) < Sparsity::Finite(4));
        let b = SparsityBound::power(2, 200); // overflows u128
        assert!(b.is_met_by(Sparsity::Infinite));
        assert!(!b.is_met_by(Sparsity::Finite(usize::MAX)));
        assert_eq!(format!("{b}"), "2^200");
        assert_eq!(format!("{}", SparsityBound::power(2, 4)), "16");
    }

    #[test]
    fn reach_examples() {
        let x = RankedSet::range(20).unwrap();
        assert_eq!(reach(&x, &ks(&[5, 10]), &ks(&[6, 12])).unwrap(), 2);
        // Containment gives zero even for proper subsets.
        assert_eq!(reach(&x, &ks(&[5, 10]), &ks(&[5])).unwrap(), 0);
        assert_eq!(reach(&x, &ks(&[5, 10]), &ks(&[5, 10])).unwrap(), 0);
        // Reach from the empty set anchors everything at the minimum.
        assert_eq!(reach(&x, &KSubset::empty(), &ks(&[7])).unwrap(), 7);
    }

    #[test]
    fn sparse_ground_sets_skip_the_rank_table() {
        let x = RankedSet::new(vec![0, 1_000_000_000]).unwrap();
        assert_eq!(x.rank(1_000_000_000), Some(1));
        assert_eq!(x.rank(5), None);
        assert_eq!(rho(&x, 0, 1_000_000_000).unwrap(), 1);
    }
}
