//! The derived partition of doubled tuples.
//!
//! Fix a coloring of n-subsets. Every 2n-subset z yields, per unordered pair
//! of position sets {p, q}, one bit: do the p-selected and q-selected
//! n-subsets of z carry the same color? The bit vector over all pairs (in
//! the canonical pair order) is z's signature; the 2n-subsets with a common
//! signature form an atom. Per z the bits encode an equivalence between the
//! selections, so the number of atoms is bounded by the number of set
//! partitions of the selections, and crudely by 2^(pair count).
//!
//! Each atom also carries its canonical index set: the intersection of the
//! slotwise agreements over the positive pairs, or all of {0, .., n-1} when
//! no pair is positive. This index set is what the decomposition verifier
//! checks canonicity against.

use std::collections::BTreeMap;
use std::fmt;

use crate::coloring::{ColorId, Coloring};
use crate::error::{Error, Result};
use crate::positions::{pair_count, IndexSet, PositionPairs, PositionSet};
use crate::subsets::{enumerate_ksubsets, KSubset};

/// One relatedness bit per unordered pair of position sets, packed in the
/// canonical pair order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSignature {
    arity: usize,
    bit_len: usize,
    bits: Vec<u64>,
}

impl AtomSignature {
    fn zeroed(arity: usize, bit_len: usize) -> Self {
        AtomSignature {
            arity,
            bit_len,
            bits: vec![0; (bit_len + 63) / 64],
        }
    }

    /// Build from explicit bits in canonical pair order.
    pub fn from_bits(arity: usize, values: &[bool]) -> Result<Self> {
        let m = PositionSet::enumerate(arity).len();
        let expected = pair_count(m);
        if values.len() != expected {
            return Err(Error::SignatureSize {
                arity,
                expected,
                actual: values.len(),
            });
        }
        let mut sig = AtomSignature::zeroed(arity, expected);
        for (i, &v) in values.iter().enumerate() {
            sig.set(i, v);
        }
        Ok(sig)
    }

    fn set(&mut self, pair: usize, v: bool) {
        debug_assert!(pair < self.bit_len);
        if v {
            self.bits[pair / 64] |= 1 << (pair % 64);
        } else {
            self.bits[pair / 64] &= !(1 << (pair % 64));
        }
    }

    pub fn get(&self, pair: usize) -> bool {
        debug_assert!(pair < self.bit_len);
        self.bits[pair / 64] >> (pair % 64) & 1 == 1
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn bit_len(&self) -> usize {
        self.bit_len
    }

    pub fn positive_pairs(&self) -> Vec<usize> {
        (0..self.bit_len).filter(|&i| self.get(i)).collect()
    }

    pub fn positive_count(&self) -> usize {
        self.bits.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Hex rendering: pair 0 is the most significant bit of the first digit,
    /// padding zeros at the tail. "8" therefore means "only pair 0 positive"
    /// for a one-pair arity.
    pub fn hex(&self) -> String {
        let digits = (self.bit_len + 3) / 4;
        let mut out = String::with_capacity(digits);
        for d in 0..digits {
            let mut nibble = 0u8;
            for b in 0..4 {
                let i = 4 * d + b;
                if i < self.bit_len && self.get(i) {
                    nibble |= 8 >> b;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }
}

impl fmt::Display for AtomSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.bit_len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// One block of the derived partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Atom {
    pub index: usize,
    pub signature: AtomSignature,
    pub canonical: IndexSet,
    pub members: Vec<KSubset>,
}

impl Atom {
    /// Membership test independent of the stored list: recompute the
    /// candidate's signature and compare.
    pub fn admits(&self, coloring: &Coloring, z: &KSubset) -> Result<bool> {
        Ok(signature_of(coloring, z)? == self.signature)
    }
}

/// Do the p- and q-selections of z carry the same color? Defined for any
/// two position sets, including p = q (then trivially true).
pub fn related(c: &Coloring, z: &KSubset, p: &PositionSet, q: &PositionSet) -> Result<bool> {
    let n = c.arity();
    if z.len() != 2 * n {
        return Err(Error::WrongSubsetSize {
            expected: 2 * n,
            actual: z.len(),
        });
    }
    if p.arity() != n || q.arity() != n {
        return Err(Error::WrongSubsetSize {
            expected: n,
            actual: if p.arity() != n { p.arity() } else { q.arity() },
        });
    }
    let a = c.color(&z.select(p.positions()))?;
    let b = c.color(&z.select(q.positions()))?;
    Ok(a == b)
}

fn selection_colors(c: &Coloring, z: &KSubset, pairs: &PositionPairs) -> Result<Vec<ColorId>> {
    let n = c.arity();
    let mut buf = vec![0usize; n];
    let mut colors = Vec::with_capacity(pairs.set_count());
    for p in pairs.sets() {
        for (slot, &pos) in buf.iter_mut().zip(p.positions()) {
            *slot = z.at(pos);
        }
        colors.push(c.color_of(&buf)?);
    }
    Ok(colors)
}

/// Signature of a single 2n-subset.
pub fn signature_of(c: &Coloring, z: &KSubset) -> Result<AtomSignature> {
    let n = c.arity();
    if z.len() != 2 * n {
        return Err(Error::WrongSubsetSize {
            expected: 2 * n,
            actual: z.len(),
        });
    }
    let pairs = PositionPairs::new(n);
    signature_from_colors(&selection_colors(c, z, &pairs)?, n)
}

fn signature_from_colors(colors: &[ColorId], arity: usize) -> Result<AtomSignature> {
    let m = colors.len();
    let mut sig = AtomSignature::zeroed(arity, pair_count(m));
    let mut idx = 0;
    for i in 0..m {
        for j in i + 1..m {
            if colors[i] == colors[j] {
                sig.set(idx, true);
            }
            idx += 1;
        }
    }
    Ok(sig)
}

/// Intersection of the slotwise agreements over the positive pairs; the
/// full index set when no pair is positive.
pub fn canonical_index_set(sig: &AtomSignature) -> IndexSet {
    let pairs = PositionPairs::new(sig.arity());
    debug_assert_eq!(pairs.pair_count(), sig.bit_len());
    let mut acc = IndexSet::full(sig.arity());
    for i in 0..sig.bit_len() {
        if sig.get(i) {
            acc = acc.intersect(pairs.agreement(i));
        }
    }
    acc
}

/// Upper bound on the number of distinct signatures: 2^(pair count).
/// None when that power leaves u128.
pub fn signature_space_bound(arity: usize) -> Option<u128> {
    let m = PositionSet::enumerate(arity).len();
    1u128.checked_shl(pair_count(m) as u32)
}

/// Group every 2n-subset of the universe by signature. Atoms come back
/// ordered by their lexicographically first member, so atom numbering is a
/// pure function of the coloring.
pub fn atoms(c: &Coloring) -> Result<Vec<Atom>> {
    let n = c.arity();
    let universe = c.universe();
    if universe < 2 * n {
        return Err(Error::UniverseTooSmall {
            universe,
            needed: 2 * n,
        });
    }
    let pairs = PositionPairs::new(n);
    let mut groups: BTreeMap<AtomSignature, Vec<KSubset>> = BTreeMap::new();
    for z in enumerate_ksubsets(universe, 2 * n)? {
        let sig = signature_from_colors(&selection_colors(c, &z, &pairs)?, n)?;
        groups.entry(sig).or_default().push(z);
    }
    let mut list: Vec<(AtomSignature, Vec<KSubset>)> = groups.into_iter().collect();
    // Enumeration was lexicographic, so each group's first member is its
    // least; discovery order = order of those first members.
    list.sort_by(|a, b| a.1[0].cmp(&b.1[0]));
    Ok(list
        .into_iter()
        .enumerate()
        .map(|(index, (signature, members))| {
            let canonical = canonical_index_set(&signature);
            Atom {
                index,
                signature,
                canonical,
                members,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::generators;
    use crate::subsets::binomial;

    fn ks(v: &[usize]) -> KSubset {
        KSubset::new(v.to_vec()).unwrap()
    }

    fn ps(n: usize, v: &[usize]) -> PositionSet {
        PositionSet::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn related_worked_example() {
        let c = generators::min(2, 10).unwrap();
        let z = ks(&[1, 2, 5, 9]);
        assert!(related(&c, &z, &ps(2, &[0, 1]), &ps(2, &[0, 2])).unwrap());
        assert!(!related(&c, &z, &ps(2, &[0, 1]), &ps(2, &[2, 3])).unwrap());
        assert!(related(&c, &z, &ps(2, &[1, 3]), &ps(2, &[1, 3])).unwrap());
    }

    #[test]
    fn signature_bits_follow_pair_order() {
        let c = generators::min(2, 10).unwrap();
        let sig = signature_of(&c, &ks(&[1, 2, 5, 9])).unwrap();
        // Sets in lex order: {0,1} {0,2} {0,3} {1,2} {1,3} {2,3} with mins
        // 1, 1, 1, 2, 2, 5. Positive pairs: (0,1) (0,2) (1,2) (3,4).
        assert_eq!(sig.positive_pairs(), vec![0, 1, 5, 12]);
        assert_eq!(sig.bit_len(), 15);
    }

    #[test]
    fn arity_one_atoms() {
        let constant = generators::constant(1, 6).unwrap();
        let got = atoms(&constant).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].signature.positive_pairs(), vec![0]);
        assert!(got[0].canonical.is_empty());
        assert_eq!(got[0].members.len() as u128, binomial(6, 2));

        let injective = generators::injective(1, 6).unwrap();
        let got = atoms(&injective).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].signature.positive_count(), 0);
        assert_eq!(got[0].canonical.indices(), &[0]);
    }

    #[test]
    fn canonical_index_set_examples() {
        // All bits positive at arity 2 forces the empty index set: the
        // disjoint pair {0,1},{2,3} agrees nowhere.
        let all = AtomSignature::from_bits(2, &[true; 15]).unwrap();
        assert!(canonical_index_set(&all).is_empty());
        let none = AtomSignature::from_bits(2, &[false; 15]).unwrap();
        assert_eq!(canonical_index_set(&none).indices(), &[0, 1]);
    }

    #[test]
    fn atoms_partition_the_tuples() {
        let c = generators::sum_mod(2, 8, 3).unwrap();
        let got = atoms(&c).unwrap();
        let total: usize = got.iter().map(|a| a.members.len()).sum();
        assert_eq!(total as u128, binomial(8, 4));
        // Disjointness plus deterministic numbering by first member.
        let mut seen = std::collections::HashSet::new();
        for a in &got {
            for m in &a.members {
                assert!(seen.insert(m.clone()));
            }
        }
        for w in got.windows(2) {
            assert!(w[0].members[0] < w[1].members[0]);
        }
        // Membership recomputation agrees with the stored lists.
        for a in &got {
            for m in &a.members {
                assert!(a.admits(&c, m).unwrap());
            }
        }
    }

    #[test]
    fn min_coloring_signature_is_uniform() {
        // Every 4-subset of a min coloring shares one atom: the four pairs
        // that compare selections with equal least slots.
        let c = generators::min(2, 9).unwrap();
        let got = atoms(&c).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].canonical.indices(), &[0]);
        assert_eq!(got[0].signature.positive_count(), 4);
    }

    #[test]
    fn hex_rendering() {
        let sig = AtomSignature::from_bits(1, &[true]).unwrap();
        assert_eq!(sig.hex(), "8");
        assert_eq!(sig.to_string(), "1");
        let mut bits = [false; 15];
        bits[0] = true;
        bits[1] = true;
        bits[5] = true;
        bits[12] = true;
        let sig = AtomSignature::from_bits(2, &bits).unwrap();
        assert_eq!(sig.to_string(), "110001000000100");
        assert_eq!(sig.hex(), "c408");
    }

    #[test]
    fn universe_must_hold_a_doubled_tuple() {
        let c = generators::constant(2, 3).unwrap();
        assert!(matches!(
            atoms(&c),
            Err(Error::UniverseTooSmall { .. })
        ));
    }
}
