//! Slow, literal re-implementations used to cross-check the main library.
//!
//! Nothing here shares enumeration or checking logic with the rest of the
//! crate: subsets are generated by a plain recursion, canonicity is the
//! written-out biconditional over all tuple pairs, and residue classes are
//! rebuilt from modular arithmetic. These run in exponential time and are
//! only meant for small instances, where disagreement with the fast paths
//! would point at a real bug.

use crate::error::{Error, Result};
use crate::coloring::Coloring;
use crate::ground::RankedSet;
use crate::partition::Atom;
use crate::positions::{pair_index, IndexSet, PositionSet};
use crate::subsets::KSubset;

/// All k-element ascending picks out of `members`, by plain recursion.
fn picks(members: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if members.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, &m) in members.iter().enumerate() {
        for mut rest in picks(&members[i + 1..], k - 1) {
            rest.insert(0, m);
            out.push(rest);
        }
    }
    out
}

/// The written-out canonicity biconditional: every two tuples have equal
/// colors exactly when they agree at every pinned slot.
fn literal_canonical(c: &Coloring, members: &[usize], pinned: &IndexSet) -> Result<bool> {
    let n = c.arity();
    let tuples = picks(members, n);
    for a in &tuples {
        for b in &tuples {
            let same_color = c.color_of(a)? == c.color_of(b)?;
            let mut agree = true;
            for i in 0..n {
                if pinned.contains(i) && a[i] != b[i] {
                    agree = false;
                    break;
                }
            }
            if same_color != agree {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every (set, pinned-index-set) pair of the given size that satisfies the
/// literal canonicity biconditional. Sets come in ascending order of their
/// member lists; index sets in bitmask order (so {0,1} follows {1}).
pub fn exhaustive_canonical(c: &Coloring, size: usize) -> Result<Vec<(KSubset, IndexSet)>> {
    let n = c.arity();
    if size < n {
        return Err(Error::SetTooSmall { size, arity: n });
    }
    let universe: Vec<usize> = (0..c.universe()).collect();
    let mut out = Vec::new();
    for set in picks(&universe, size) {
        for mask in 0u32..(1 << n) {
            let indices: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            let pinned = IndexSet::new(n, indices)?;
            if literal_canonical(c, &set, &pinned)? {
                out.push((KSubset::new(set.clone())?, pinned));
            }
        }
    }
    Ok(out)
}

/// How a relatedness query between two n-subsets was decided: the ambient
/// 2n-set used, the slots each subset occupies in it, and the verdict read
/// off the atom's signature (or the diagonal shortcut when both subsets
/// coincide).
#[derive(Debug, Clone)]
pub struct QEquivWitness {
    pub witness: KSubset,
    pub p: PositionSet,
    pub q: PositionSet,
    pub diagonal: bool,
    pub equivalent: bool,
}

/// Decide whether two n-subsets of a homogeneous ground set are related,
/// using only the atom's signature: walk every 2n-subset of the ground set
/// that contains both, read off the slot pair each one induces, and stop at
/// the first whose pair bit is positive (two equal subsets always land on
/// the same slots, which counts). Returns false, carrying the first ambient
/// set tried, when no ambient set witnesses the relation. Meaningful only
/// when every 2n-subset of the ground set lies in the atom.
pub fn q_equiv(
    atom: &Atom,
    ground: &RankedSet,
    x: &KSubset,
    y: &KSubset,
) -> Result<QEquivWitness> {
    let n = atom.signature.arity();
    if x.len() != n {
        return Err(Error::WrongSubsetSize {
            expected: n,
            actual: x.len(),
        });
    }
    if y.len() != n {
        return Err(Error::WrongSubsetSize {
            expected: n,
            actual: y.len(),
        });
    }
    for &m in x.members().iter().chain(y.members()) {
        ground.require_rank(m)?;
    }
    let union = x.union(y);
    if union.len() > 2 * n {
        return Err(Error::SubsetTooLarge {
            subset: union.len(),
            universe: 2 * n,
        });
    }
    let spare: Vec<usize> = ground
        .elements()
        .iter()
        .copied()
        .filter(|&e| !union.contains(e))
        .collect();
    let need = 2 * n - union.len();
    if spare.len() < need {
        return Err(Error::SetTooSmall {
            size: ground.len(),
            arity: 2 * n,
        });
    }
    let sets = PositionSet::enumerate(n);
    let mut first = None;
    for pad in picks(&spare, need) {
        let mut members = union.members().to_vec();
        members.extend(pad);
        members.sort_unstable();
        let witness = KSubset::new(members)?;
        let slot_of = |member: usize| -> usize {
            witness
                .members()
                .iter()
                .position(|&w| w == member)
                .expect("witness contains the union")
        };
        let p = PositionSet::new(n, x.members().iter().map(|&m| slot_of(m)).collect())?;
        let q = PositionSet::new(n, y.members().iter().map(|&m| slot_of(m)).collect())?;
        let diagonal = p == q;
        let positive = diagonal || {
            let ip = sets.iter().position(|s| s == &p).expect("enumerated");
            let iq = sets.iter().position(|s| s == &q).expect("enumerated");
            let (lo, hi) = if ip < iq { (ip, iq) } else { (iq, ip) };
            atom.signature.get(pair_index(lo, hi, sets.len()))
        };
        if positive {
            return Ok(QEquivWitness {
                witness,
                p,
                q,
                diagonal,
                equivalent: true,
            });
        }
        if first.is_none() {
            first = Some((witness, p, q, diagonal));
        }
    }
    let (witness, p, q, diagonal) = first.expect("at least one ambient set exists");
    Ok(QEquivWitness {
        witness,
        p,
        q,
        diagonal,
        equivalent: false,
    })
}

/// Result of scanning gaps from 1 upward with the literal class checker.
#[derive(Debug, Clone)]
pub struct MinGapScan {
    /// First gap at which every upper class passes. Always set: at gap
    /// |set| everything lands in the exempt low class.
    pub minimal: usize,
    /// True when the minimal gap passes only because no upper class has
    /// enough members to compare.
    pub vacuous: bool,
    /// (gap, passed) for every gap scanned, 1..=|set|.
    pub per_gap: Vec<(usize, bool)>,
}

/// Scan gaps 1..=|set|, rebuilding the residue classes from scratch each
/// time and applying the literal canonicity biconditional to every upper
/// class with at least arity members.
pub fn min_gap_empirical(c: &Coloring, set: &KSubset, pinned: &IndexSet) -> Result<MinGapScan> {
    let n = c.arity();
    if set.len() < n {
        return Err(Error::SetTooSmall {
            size: set.len(),
            arity: n,
        });
    }
    if pinned.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            actual: pinned.arity(),
        });
    }
    let mut per_gap = Vec::with_capacity(set.len());
    let mut minimal = None;
    let mut vacuous = false;
    for gap in 1..=set.len() {
        let mut classes: Vec<Vec<usize>> = vec![Vec::new(); gap + 1];
        for (position, &member) in set.members().iter().enumerate() {
            if position < gap {
                classes[0].push(member);
            } else {
                classes[1 + position % gap].push(member);
            }
        }
        let mut all_pass = true;
        let mut any_checked = false;
        for class in &classes[1..] {
            if class.len() < n {
                continue;
            }
            any_checked = true;
            if !literal_canonical(c, class, pinned)? {
                all_pass = false;
                break;
            }
        }
        per_gap.push((gap, all_pass));
        if all_pass && minimal.is_none() {
            minimal = Some(gap);
            vacuous = !any_checked;
        }
    }
    Ok(MinGapScan {
        minimal: minimal.expect("gap |set| leaves no upper class to check"),
        vacuous,
        per_gap,
    })
}
