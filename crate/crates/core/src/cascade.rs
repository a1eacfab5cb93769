//! Cascades: sparsity-graded chains of selection steps.
//!
//! One step takes a sparse n-subset x, lays out a 2n-element witness z
//! around it so that x sits at the slots of p, and reads the target y off
//! the slots of q. The witness spacing shrinks geometrically with the
//! remaining level, so a chain of steps (a cascade) trades sparsity for
//! reach in a controlled way: entry i is still n^(t-2i)-sparse and moves at
//! most n^(t-2i-1) ranks. Driving a full schedule (every positive pair of
//! an atom, n steps each) squeezes the terminal entry down to exactly the
//! canonically pinned slots of the start.
//!
//! Everything here is arity >= 2; arity-1 colorings never need cascades
//! because their decomposition verifier works directly.

use crate::error::{Error, Result};
use crate::ground::{reach, sparsity, RankedSet, SparsityBound};
use crate::partition::{Atom, AtomSignature};
use crate::positions::{pair_at, PositionSet};
use crate::subsets::{enumerate_ksubsets, KSubset};

/// Largest ground set whose 2n-subsets are exhaustively re-checked against
/// the atom before a reduction. Bigger ground sets skip the check: the
/// caller vouches for homogeneity there, because enumerating the subsets
/// would dwarf the reduction itself.
pub const HOMOGENEITY_CHECK_LIMIT: usize = 32;

/// One verified selection step: source and target are the p- and
/// q-selections of the witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeStep {
    pub source: KSubset,
    pub target: KSubset,
    pub p: PositionSet,
    pub q: PositionSet,
    pub witness: KSubset,
}

impl CascadeStep {
    /// Build from raw data, re-verifying every selection equation. Nothing
    /// downstream trusts a step that did not pass through here.
    pub fn new(
        ground: &RankedSet,
        source: KSubset,
        target: KSubset,
        p: PositionSet,
        q: PositionSet,
        witness: KSubset,
    ) -> Result<Self> {
        let n = p.arity();
        if q.arity() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                actual: q.arity(),
            });
        }
        if n < 2 {
            return Err(Error::CascadeArityTooSmall);
        }
        if witness.len() != 2 * n {
            return Err(Error::WrongSubsetSize {
                expected: 2 * n,
                actual: witness.len(),
            });
        }
        for &w in witness.members() {
            ground.require_rank(w)?;
        }
        for &m in source.members().iter().chain(target.members()) {
            ground.require_tail_rank(m)?;
        }
        if witness.select(p.positions()) != source {
            return Err(Error::SelectionMismatch {
                detail: format!(
                    "p-selection {} of witness {} is not the source {}",
                    witness.select(p.positions()),
                    witness,
                    source
                ),
            });
        }
        if witness.select(q.positions()) != target {
            return Err(Error::SelectionMismatch {
                detail: format!(
                    "q-selection {} of witness {} is not the target {}",
                    witness.select(q.positions()),
                    witness,
                    target
                ),
            });
        }
        Ok(CascadeStep {
            source,
            target,
            p,
            q,
            witness,
        })
    }

    pub fn arity(&self) -> usize {
        self.p.arity()
    }
}

/// Construct one step at the given level: requires the source to be
/// n^(2*level)-sparse, spaces the witness by n^(2*level-2), and therefore
/// hands back a target that is ready for a step at level-1.
pub fn step_construct(
    ground: &RankedSet,
    source: &KSubset,
    p: &PositionSet,
    q: &PositionSet,
    level: usize,
) -> Result<CascadeStep> {
    let n = source.len();
    if n < 2 {
        return Err(Error::CascadeArityTooSmall);
    }
    if level == 0 {
        return Err(Error::ZeroLevel);
    }
    if p.arity() != n || q.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            actual: if p.arity() != n { p.arity() } else { q.arity() },
        });
    }
    let required = SparsityBound::power(n, 2 * level);
    let actual = sparsity(ground, source)?;
    if !required.is_met_by(actual) {
        return Err(Error::InsufficientSparsity { required, actual });
    }
    // The sparsity check passed with a finite ground set, so n^(2*level)
    // and everything below fits comfortably in u128.
    let spacing = required
        .value
        .expect("bound met by a finite sparsity, so it is finite")
        / (n * n) as u128;

    let ranks: Vec<u128> = source
        .members()
        .iter()
        .map(|&m| ground.require_tail_rank(m).map(|r| r as u128))
        .collect::<Result<_>>()?;

    // Highest rank the top block will touch; check before building.
    let top = ranks[n - 1] + (2 * n - 1 - p.at(n - 1)) as u128 * spacing;
    if top >= ground.len() as u128 {
        return Err(Error::InsufficientHeadroom {
            needed: top,
            available: ground.len(),
        });
    }

    let mut witness_ranks: Vec<u128> = Vec::with_capacity(2 * n);
    // Bottom block: ranks spacing, 2*spacing, .., p[0]*spacing.
    for k in 1..=p.at(0) {
        witness_ranks.push(k as u128 * spacing);
    }
    // Middle blocks: start at the previous source member, step by spacing.
    for i in 1..n {
        for k in 0..p.at(i) - p.at(i - 1) {
            witness_ranks.push(ranks[i - 1] + k as u128 * spacing);
        }
    }
    // Top block: from the last source member up to slot 2n-1.
    for k in 0..=(2 * n - 1 - p.at(n - 1)) {
        witness_ranks.push(ranks[n - 1] + k as u128 * spacing);
    }
    debug_assert_eq!(witness_ranks.len(), 2 * n);
    debug_assert!(witness_ranks.windows(2).all(|w| w[0] < w[1]));

    let witness = KSubset::new(
        witness_ranks
            .iter()
            .map(|&r| ground.at(r as usize))
            .collect(),
    )?;
    let target = witness.select(q.positions());
    let step = CascadeStep::new(
        ground,
        source.clone(),
        target,
        p.clone(),
        q.clone(),
        witness,
    )?;
    debug_assert!(
        SparsityBound::power(n, 2 * level - 2).is_met_by(sparsity(ground, &step.witness)?)
    );
    debug_assert!(reach(ground, source, &step.witness)? as u128 <= spacing * n as u128);
    Ok(step)
}

/// A list of (p, q) pairs to drive, one step each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule {
    pub pairs: Vec<(PositionSet, PositionSet)>,
}

impl Schedule {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Sparsity the start must have to drive the whole schedule.
    pub fn required_sparsity(&self, arity: usize) -> SparsityBound {
        SparsityBound::power(arity, 2 * self.len())
    }

    /// Whether every positive pair of the signature occurs (in either
    /// orientation) and steps repeat in runs of at least arity. Both hold
    /// for full_schedule output; hand-built schedules can check themselves.
    pub fn is_full_for(&self, sig: &AtomSignature) -> bool {
        let n = sig.arity();
        let sets = PositionSet::enumerate(n);
        let m = sets.len();
        for pair in sig.positive_pairs() {
            let (i, j) = pair_at(pair, m);
            let covered = self.pairs.iter().any(|(p, q)| {
                (p == &sets[i] && q == &sets[j]) || (p == &sets[j] && q == &sets[i])
            });
            if !covered {
                return false;
            }
        }
        let mut run = 0;
        let mut prev: Option<&(PositionSet, PositionSet)> = None;
        for entry in &self.pairs {
            if prev == Some(entry) {
                run += 1;
            } else {
                if prev.is_some() && run < n {
                    return false;
                }
                run = 1;
            }
            prev = Some(entry);
        }
        prev.is_none() || run >= n
    }
}

/// The canonical driving order for an atom: every positive pair, in
/// canonical pair order, repeated arity times.
pub fn full_schedule(sig: &AtomSignature) -> Result<Schedule> {
    let n = sig.arity();
    if n < 2 {
        return Err(Error::CascadeArityTooSmall);
    }
    let sets = PositionSet::enumerate(n);
    let m = sets.len();
    let mut pairs = Vec::new();
    for pair in sig.positive_pairs() {
        let (i, j) = pair_at(pair, m);
        for _ in 0..n {
            pairs.push((sets[i].clone(), sets[j].clone()));
        }
    }
    let schedule = Schedule { pairs };
    debug_assert!(schedule.is_full_for(sig));
    Ok(schedule)
}

/// A verified chain of steps. Level t = 2 * (number of steps); entry i is
/// n^(t-2i)-sparse and within reach n^(t-2i-1) of entry i+1.
#[derive(Debug, Clone)]
pub struct Cascade {
    pub level: usize,
    pub entries: Vec<KSubset>,
    pub steps: Vec<CascadeStep>,
}

impl Cascade {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> &KSubset {
        &self.entries[0]
    }

    pub fn terminal(&self) -> &KSubset {
        self.entries.last().expect("at least the start entry")
    }

    /// Re-verify the whole chain from raw data: entry wiring, selection
    /// equations, and the graded sparsity/reach inequalities.
    pub fn verify(&self, ground: &RankedSet) -> Result<()> {
        if self.entries.len() != self.steps.len() + 1 {
            return Err(Error::SelectionMismatch {
                detail: format!(
                    "{} entries do not wrap {} steps",
                    self.entries.len(),
                    self.steps.len()
                ),
            });
        }
        let n = match self.steps.first() {
            Some(s) => s.arity(),
            None => return Ok(()),
        };
        for (i, step) in self.steps.iter().enumerate() {
            if step.source != self.entries[i] || step.target != self.entries[i + 1] {
                return Err(Error::SelectionMismatch {
                    detail: format!("step {i} does not connect entries {i} and {}", i + 1),
                });
            }
            // Selection equations, from scratch.
            CascadeStep::new(
                ground,
                step.source.clone(),
                step.target.clone(),
                step.p.clone(),
                step.q.clone(),
                step.witness.clone(),
            )
            .map_err(|e| Error::StepFailed {
                index: i,
                source: Box::new(e),
            })?;
            let required = SparsityBound::power(n, self.level - 2 * i);
            let actual = sparsity(ground, &self.entries[i])?;
            if !required.is_met_by(actual) {
                return Err(Error::StepFailed {
                    index: i,
                    source: Box::new(Error::InsufficientSparsity { required, actual }),
                });
            }
            let bound = SparsityBound::power(n, self.level - 2 * i - 1);
            let moved = reach(ground, &self.entries[i], &self.entries[i + 1])?;
            match bound.value {
                Some(b) if (moved as u128) > b => {
                    return Err(Error::StepFailed {
                        index: i,
                        source: Box::new(Error::InsufficientHeadroom {
                            needed: moved as u128,
                            available: b as usize,
                        }),
                    });
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// Drive a schedule from a start set. Step i runs at level (len - i), so
/// the start needs sparsity n^(2*len) and each target is exactly sparse
/// enough for the next step. An empty schedule is the trivial cascade.
pub fn build_cascade(ground: &RankedSet, start: &KSubset, schedule: &Schedule) -> Result<Cascade> {
    let n = start.len();
    if n < 2 {
        return Err(Error::CascadeArityTooSmall);
    }
    let l = schedule.len();
    let mut entries = vec![start.clone()];
    let mut steps = Vec::with_capacity(l);
    for (i, (p, q)) in schedule.pairs.iter().enumerate() {
        let step =
            step_construct(ground, &entries[i], p, q, l - i).map_err(|e| Error::StepFailed {
                index: i,
                source: Box::new(e),
            })?;
        entries.push(step.target.clone());
        steps.push(step);
    }
    let cascade = Cascade {
        level: 2 * l,
        entries,
        steps,
    };
    cascade.verify(ground)?;
    Ok(cascade)
}

/// Full reduction for an atom: check the ground set lies inside the atom,
/// drive the atom's full schedule, and confirm the terminal entry shares
/// with the start exactly the canonically pinned slots.
pub fn core_reduce(ground: &RankedSet, start: &KSubset, atom: &Atom) -> Result<Cascade> {
    let n = atom.signature.arity();
    if n < 2 {
        return Err(Error::CascadeArityTooSmall);
    }
    if start.len() != n {
        return Err(Error::WrongSubsetSize {
            expected: n,
            actual: start.len(),
        });
    }
    // Homogeneity precondition: every 2n-subset of the ground set must
    // belong to the atom. Only enforceable by enumeration on small ground
    // sets; see HOMOGENEITY_CHECK_LIMIT.
    if ground.len() >= 2 * n && ground.len() <= HOMOGENEITY_CHECK_LIMIT {
        let members: std::collections::BTreeSet<&KSubset> = atom.members.iter().collect();
        let mut mismatches = 0;
        let mut total = 0;
        for idx in enumerate_ksubsets(ground.len(), 2 * n)? {
            let z = KSubset::new(idx.members().iter().map(|&r| ground.at(r)).collect())?;
            total += 1;
            if !members.contains(&z) {
                mismatches += 1;
            }
        }
        if mismatches > 0 {
            return Err(Error::AtomMismatch { mismatches, total });
        }
    }
    let schedule = full_schedule(&atom.signature)?;
    let required = schedule.required_sparsity(n);
    let actual = sparsity(ground, start)?;
    if !required.is_met_by(actual) {
        return Err(Error::InsufficientSparsity { required, actual });
    }
    let cascade = build_cascade(ground, start, &schedule)?;
    let expected = start.select(atom.canonical.indices());
    let actual_shared = start.intersect(cascade.terminal());
    if expected != actual_shared {
        return Err(Error::TerminalIntersection {
            expected: expected.members().to_vec(),
            actual: actual_shared.members().to_vec(),
        });
    }
    Ok(cascade)
}

/// Rewrite a step's witness so that one dropped source member moves down to
/// a replacement, keeping the same target. The replacement must stay above
/// the next lower landmark (the anchor) by at least 2n ranks.
pub fn shift_witness(
    ground: &RankedSet,
    prior: &CascadeStep,
    index: usize,
    replacement: usize,
) -> Result<CascadeStep> {
    let n = prior.arity();
    if index >= n {
        return Err(Error::IndexOutOfRange { index, arity: n });
    }
    let moved = prior.source.at(index);
    if prior.target.contains(moved) {
        return Err(Error::ShiftIndexRetained { index });
    }
    // Anchor: largest element of source, target, or the ground minimum
    // strictly below the moved member.
    let anchor = prior
        .source
        .members()
        .iter()
        .chain(prior.target.members())
        .copied()
        .chain(std::iter::once(ground.min_element()))
        .filter(|&e| e < moved)
        .max()
        .expect("the ground minimum is below every tail member");
    if replacement <= anchor || replacement > moved {
        return Err(Error::ReplacementOutOfRange {
            low: anchor,
            high: moved,
        });
    }
    ground.require_rank(replacement)?;
    let distance = crate::ground::rho(ground, anchor, replacement)?;
    if distance < 2 * n {
        return Err(Error::ShiftTooClose {
            distance,
            required: 2 * n,
        });
    }
    if replacement == moved {
        return Ok(prior.clone());
    }
    // The witness members in [anchor, moved] form one contiguous run ending
    // at the moved member; swap the run for consecutive ranks plus the
    // replacement on top.
    let run: Vec<usize> = prior
        .witness
        .members()
        .iter()
        .copied()
        .filter(|&w| anchor <= w && w <= moved)
        .collect();
    debug_assert_eq!(*run.last().expect("moved itself is in the run"), moved);
    let base_rank = ground.require_rank(run[0])?;
    let mut rebuilt: Vec<usize> = prior
        .witness
        .members()
        .iter()
        .copied()
        .filter(|&w| !(anchor <= w && w <= moved))
        .collect();
    for t in 0..run.len() - 1 {
        rebuilt.push(ground.at(base_rank + t));
    }
    rebuilt.push(replacement);
    rebuilt.sort_unstable();
    rebuilt.dedup();
    let witness = KSubset::new(rebuilt).map_err(|e| Error::WitnessReconstruction {
        detail: e.to_string(),
    })?;
    let source = prior.source.replace(moved, replacement).map_err(|e| {
        Error::WitnessReconstruction {
            detail: e.to_string(),
        }
    })?;
    if witness.len() != prior.witness.len() {
        return Err(Error::WitnessReconstruction {
            detail: format!(
                "rewritten witness has {} members, expected {}",
                witness.len(),
                prior.witness.len()
            ),
        });
    }
    CascadeStep::new(
        ground,
        source,
        prior.target.clone(),
        prior.p.clone(),
        prior.q.clone(),
        witness,
    )
    .map_err(|e| Error::WitnessReconstruction {
        detail: e.to_string(),
    })
}

/// Push a set into its gap-m normal form relative to an index set: pinned
/// slots keep their elements, everything else drops to the lowest ranks
/// consistent with spacing exactly m. Two sets agreeing on the pinned slots
/// (both m-sparse) land on the same normal form.
pub fn hat_normal_form(
    ground: &RankedSet,
    set: &KSubset,
    pinned: &crate::positions::IndexSet,
    gap: usize,
) -> Result<KSubset> {
    let n = set.len();
    if n < 2 {
        return Err(Error::CascadeArityTooSmall);
    }
    if pinned.arity() != n {
        return Err(Error::ArityMismatch {
            expected: n,
            actual: pinned.arity(),
        });
    }
    if gap == 0 {
        return Err(Error::ZeroGap);
    }
    let required = SparsityBound::exact(gap);
    let actual = sparsity(ground, set)?;
    if !required.is_met_by(actual) {
        return Err(Error::InsufficientSparsity { required, actual });
    }
    let mut out: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        let candidate = if pinned.contains(i) {
            set.at(i)
        } else {
            let rank = if i == 0 {
                gap
            } else {
                ground.require_rank(out[i - 1])? + gap
            };
            if rank >= ground.len() {
                return Err(Error::InsufficientHeadroom {
                    needed: rank as u128,
                    available: ground.len(),
                });
            }
            ground.at(rank)
        };
        if i > 0 && candidate <= out[i - 1] {
            return Err(Error::RankCollision {
                index: i,
                first: out[i - 1],
                second: candidate,
            });
        }
        debug_assert!(candidate <= set.at(i), "normal form never moves up");
        out.push(candidate);
    }
    KSubset::new(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::generators;
    use crate::ground::Sparsity;
    use crate::partition::atoms;
    use crate::positions::IndexSet;

    fn ks(v: &[usize]) -> KSubset {
        KSubset::new(v.to_vec()).unwrap()
    }

    fn ps(n: usize, v: &[usize]) -> PositionSet {
        PositionSet::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn step_worked_example() {
        let ground = RankedSet::range(60).unwrap();
        let x = ks(&[16, 32]);
        let step = step_construct(&ground, &x, &ps(2, &[0, 1]), &ps(2, &[2, 3]), 1).unwrap();
        assert_eq!(step.witness.members(), &[16, 32, 33, 34]);
        assert_eq!(step.target.members(), &[33, 34]);
        assert_eq!(
            sparsity(&ground, &step.target).unwrap(),
            Sparsity::Finite(1)
        );
        assert_eq!(reach(&ground, &x, &step.target).unwrap(), 2);
    }

    #[test]
    fn step_rejects_thin_sources() {
        let ground = RankedSet::range(60).unwrap();
        let x = ks(&[16, 18]); // sparsity 2 < 2^2
        match step_construct(&ground, &x, &ps(2, &[0, 1]), &ps(2, &[2, 3]), 1) {
            Err(Error::InsufficientSparsity { required, actual }) => {
                assert_eq!(required.value, Some(4));
                assert_eq!(actual, Sparsity::Finite(2));
            }
            other => panic!("expected sparsity error, got {other:?}"),
        }
    }

    #[test]
    fn step_rejects_missing_headroom() {
        let ground = RankedSet::range(36).unwrap();
        let x = ks(&[16, 32]);
        // Top block would touch rank 32 + 2 = 34 < 36: fits. Shrink further.
        let tight = RankedSet::range(34).unwrap();
        assert!(matches!(
            step_construct(&tight, &x, &ps(2, &[0, 1]), &ps(2, &[2, 3]), 1),
            Err(Error::InsufficientHeadroom { needed: 34, .. })
        ));
        assert!(step_construct(&ground, &x, &ps(2, &[0, 1]), &ps(2, &[2, 3]), 1).is_ok());
    }

    #[test]
    fn step_levels_scale_spacing() {
        let ground = RankedSet::range(200).unwrap();
        let x = ks(&[64, 128]);
        let step = step_construct(&ground, &x, &ps(2, &[1, 2]), &ps(2, &[0, 3]), 2).unwrap();
        // Level 2 spacing is 4: bottom block {X_4}, then 64, then 128,132,136.
        assert_eq!(step.witness.members(), &[4, 64, 128, 132]);
        assert_eq!(step.source.members(), &[64, 128]);
    }

    #[test]
    fn sixteen_level_reduction_drops_exactly_unpinned_slots() {
        // The min coloring has one atom: four positive pairs, pinned {0}.
        // Its full schedule is 8 steps, so the start needs sparsity 2^16.
        let c = generators::min(2, 9).unwrap();
        let atom = atoms(&c).unwrap().into_iter().next().unwrap();
        assert_eq!(atom.signature.positive_count(), 4);
        let schedule = full_schedule(&atom.signature).unwrap();
        assert_eq!(schedule.len(), 8);
        assert!(schedule.is_full_for(&atom.signature));
        assert_eq!(format!("{}", schedule.required_sparsity(2)), "65536");

        let ground = RankedSet::range(250_000).unwrap();
        let start = ks(&[65_536, 131_072 + 17]);
        let cascade = core_reduce(&ground, &start, &atom).unwrap();
        assert_eq!(cascade.len(), 8);
        assert_eq!(cascade.level, 16);
        cascade.verify(&ground).unwrap();
        // Pinned slot 0 survives to the terminal; slot 1 is gone.
        let terminal = cascade.terminal();
        assert!(terminal.contains(65_536));
        assert!(!terminal.contains(131_072 + 17));
        assert_eq!(start.intersect(terminal).members(), &[65_536]);
    }

    #[test]
    fn reduction_on_all_positive_atom_is_infeasible() {
        let c = generators::constant(2, 9).unwrap();
        let atom = atoms(&c).unwrap().into_iter().next().unwrap();
        assert_eq!(atom.signature.positive_count(), 15);
        let ground = RankedSet::range(9).unwrap();
        match core_reduce(&ground, &ks(&[4, 8]), &atom) {
            Err(Error::InsufficientSparsity { required, .. }) => {
                assert_eq!(required.value, Some(1u128 << 60));
            }
            other => panic!("expected infeasible sparsity, got {other:?}"),
        }
    }

    #[test]
    fn reduction_on_empty_signature_is_trivial() {
        let c = generators::injective(2, 9).unwrap();
        let atom = atoms(&c).unwrap().into_iter().next().unwrap();
        assert_eq!(atom.signature.positive_count(), 0);
        assert_eq!(atom.canonical.indices(), &[0, 1]);
        let ground = RankedSet::range(9).unwrap();
        let cascade = core_reduce(&ground, &ks(&[4, 8]), &atom).unwrap();
        assert!(cascade.is_empty());
        assert_eq!(cascade.terminal(), &ks(&[4, 8]));
    }

    #[test]
    fn reduction_rejects_foreign_ground_sets() {
        // Atoms of the identity-sum coloring split by sum pattern, so a
        // mixed ground set cannot be homogeneous for the first atom.
        let c = generators::sidon_sum(2, 10).unwrap();
        let all = atoms(&c).unwrap();
        assert!(all.len() > 1);
        let ground = RankedSet::range(10).unwrap();
        assert!(matches!(
            core_reduce(&ground, &ks(&[4, 8]), &all[0]),
            Err(Error::AtomMismatch { .. })
        ));
    }

    #[test]
    fn shift_worked_example() {
        let ground = RankedSet::range(60).unwrap();
        let x = ks(&[16, 32]);
        let step = step_construct(&ground, &x, &ps(2, &[0, 1]), &ps(2, &[2, 3]), 1).unwrap();
        let shifted = shift_witness(&ground, &step, 1, 25).unwrap();
        assert_eq!(shifted.source.members(), &[16, 25]);
        assert_eq!(shifted.target.members(), &[33, 34]);
        assert_eq!(shifted.witness.members(), &[16, 25, 33, 34]);

        // Identity shift returns the step unchanged.
        let same = shift_witness(&ground, &step, 1, 32).unwrap();
        assert_eq!(&same, &step);

        // Too close to the anchor (16): distance 3 < 4.
        assert!(matches!(
            shift_witness(&ground, &step, 1, 19),
            Err(Error::ShiftTooClose { distance: 3, required: 4 })
        ));
        // Out of the half-open interval.
        assert!(matches!(
            shift_witness(&ground, &step, 1, 16),
            Err(Error::ReplacementOutOfRange { low: 16, high: 32 })
        ));
        // Slot 0 still selects into the target? No: target is {33,34}, so
        // slot 0 is shiftable; but slot indexes must stay in range.
        assert!(matches!(
            shift_witness(&ground, &step, 2, 20),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn shift_rejects_retained_slots() {
        let ground = RankedSet::range(60).unwrap();
        let x = ks(&[16, 32]);
        // q keeps slot 0, so the source's slot-0 element stays in the target.
        let step = step_construct(&ground, &x, &ps(2, &[0, 1]), &ps(2, &[0, 2]), 1).unwrap();
        assert!(step.target.contains(16));
        assert!(matches!(
            shift_witness(&ground, &step, 0, 10),
            Err(Error::ShiftIndexRetained { index: 0 })
        ));
    }

    #[test]
    fn normal_form_examples() {
        let ground = RankedSet::range(100).unwrap();
        let x = ks(&[40, 80]);
        // Nothing pinned: both slots drop to ranks m and 2m.
        let hat = hat_normal_form(&ground, &x, &IndexSet::empty(2), 5).unwrap();
        assert_eq!(hat.members(), &[5, 10]);
        // Slot 1 pinned: slot 0 drops, slot 1 stays.
        let hat = hat_normal_form(&ground, &x, &IndexSet::new(2, vec![1]).unwrap(), 5).unwrap();
        assert_eq!(hat.members(), &[5, 80]);
        // Everything pinned: identity.
        let hat = hat_normal_form(&ground, &x, &IndexSet::full(2), 5).unwrap();
        assert_eq!(hat.members(), &[40, 80]);
        // Agreement on pinned slots makes normal forms collide.
        let y = ks(&[25, 80]);
        let hx = hat_normal_form(&ground, &x, &IndexSet::new(2, vec![1]).unwrap(), 5).unwrap();
        let hy = hat_normal_form(&ground, &y, &IndexSet::new(2, vec![1]).unwrap(), 5).unwrap();
        assert_eq!(hx, hy);
        // Sparsity below the gap is rejected.
        assert!(matches!(
            hat_normal_form(&ground, &ks(&[40, 43]), &IndexSet::empty(2), 5),
            Err(Error::InsufficientSparsity { .. })
        ));
    }

    #[test]
    fn cascade_chain_obeys_grading() {
        let ground = RankedSet::range(400).unwrap();
        let start = ks(&[100, 220]);
        let schedule = Schedule {
            pairs: vec![
                (ps(2, &[0, 1]), ps(2, &[2, 3])),
                (ps(2, &[1, 2]), ps(2, &[0, 3])),
                (ps(2, &[0, 2]), ps(2, &[1, 3])),
            ],
        };
        let cascade = build_cascade(&ground, &start, &schedule).unwrap();
        assert_eq!(cascade.level, 6);
        assert_eq!(cascade.entries.len(), 4);
        cascade.verify(&ground).unwrap();
        for (i, _) in cascade.steps.iter().enumerate() {
            let d = sparsity(&ground, &cascade.entries[i]).unwrap();
            assert!(SparsityBound::power(2, 6 - 2 * i).is_met_by(d));
            let r = reach(&ground, &cascade.entries[i], &cascade.entries[i + 1]).unwrap();
            assert!(r as u128 <= 1 << (6 - 2 * i - 1));
        }
    }

    #[test]
    fn arity_one_is_rejected_everywhere() {
        let ground = RankedSet::range(20).unwrap();
        let x = ks(&[5]);
        let p = PositionSet::new(1, vec![0]).unwrap();
        let q = PositionSet::new(1, vec![1]).unwrap();
        assert!(matches!(
            step_construct(&ground, &x, &p, &q, 1),
            Err(Error::CascadeArityTooSmall)
        ));
        let c = generators::constant(1, 8).unwrap();
        let atom = atoms(&c).unwrap().into_iter().next().unwrap();
        assert!(matches!(
            full_schedule(&atom.signature),
            Err(Error::CascadeArityTooSmall)
        ));
        assert!(matches!(
            hat_normal_form(&ground, &x, &IndexSet::full(1), 2),
            Err(Error::CascadeArityTooSmall)
        ));
    }
}
