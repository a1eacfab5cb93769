//! Canonicity checks, searches, and the decomposition verifier.
//!
//! A set X is I-canonical for a coloring when two n-subsets of X share a
//! color exactly if they agree on every index in I. The empty I therefore
//! means "one color everywhere" and the full I means "all colors distinct".
//! The verifier ties this to the derived partition: inside a set that is
//! homogeneous for an atom Q, splitting the ranks into residue classes with
//! a large enough gap g makes every class I(Q)-canonical. The empirical
//! question is how small g can be; the verifier scans upward and reports.

use std::fmt;

use crate::coloring::{ColorId, Coloring};
use crate::error::{Error, Result};
use crate::partition::{atoms, Atom};
use crate::positions::IndexSet;
use crate::subsets::{enumerate_ksubsets, lex_rank, KSubset};

/// Which side of the biconditional broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// The two subsets share a color but differ somewhere on I.
    EqualColorsDisagree,
    /// The two subsets agree on all of I but carry distinct colors.
    AgreeOnIndicesDistinctColors,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicityViolation {
    pub first: KSubset,
    pub second: KSubset,
    pub kind: ViolationKind,
}

impl fmt::Display for CanonicityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::EqualColorsDisagree => write!(
                f,
                "{} and {} share a color but disagree on the pinned indices",
                self.first, self.second
            ),
            ViolationKind::AgreeOnIndicesDistinctColors => write!(
                f,
                "{} and {} agree on the pinned indices but have distinct colors",
                self.first, self.second
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicityCheck {
    Canonical,
    Violated(CanonicityViolation),
}

impl CanonicityCheck {
    pub fn is_canonical(&self) -> bool {
        matches!(self, CanonicityCheck::Canonical)
    }
}

/// All n-subsets of the given members, paired with their colors.
fn colored_tuples(c: &Coloring, members: &[usize]) -> Result<Vec<(Vec<usize>, ColorId)>> {
    let n = c.arity();
    let mut out = Vec::new();
    for idx in enumerate_ksubsets(members.len(), n)? {
        let tuple: Vec<usize> = idx.members().iter().map(|&i| members[i]).collect();
        let color = c.color_of(&tuple)?;
        out.push((tuple, color));
    }
    Ok(out)
}

/// First violation of the I-canonicity biconditional over the n-subsets of
/// `members`, in lexicographic pair order; None when canonical.
fn first_violation(
    c: &Coloring,
    members: &[usize],
    index_set: &IndexSet,
) -> Result<Option<CanonicityViolation>> {
    let tuples = colored_tuples(c, members)?;
    for i in 0..tuples.len() {
        for j in i + 1..tuples.len() {
            let (ta, ca) = &tuples[i];
            let (tb, cb) = &tuples[j];
            let agree = index_set.indices().iter().all(|&k| ta[k] == tb[k]);
            let same = ca == cb;
            if same != agree {
                return Ok(Some(CanonicityViolation {
                    first: KSubset::new(ta.clone())?,
                    second: KSubset::new(tb.clone())?,
                    kind: if same {
                        ViolationKind::EqualColorsDisagree
                    } else {
                        ViolationKind::AgreeOnIndicesDistinctColors
                    },
                }));
            }
        }
    }
    Ok(None)
}

/// Do all n-subsets of the set share one color?
pub fn is_homogeneous(c: &Coloring, set: &KSubset) -> Result<bool> {
    if set.len() < c.arity() {
        return Err(Error::SetTooSmall {
            size: set.len(),
            arity: c.arity(),
        });
    }
    let tuples = colored_tuples(c, set.members())?;
    Ok(tuples.iter().all(|(_, col)| *col == tuples[0].1))
}

/// Full I-canonicity check with a violation witness on failure.
pub fn check_canonical(c: &Coloring, set: &KSubset, index_set: &IndexSet) -> Result<CanonicityCheck> {
    if index_set.arity() != c.arity() {
        return Err(Error::ArityMismatch {
            expected: c.arity(),
            actual: index_set.arity(),
        });
    }
    if set.len() < c.arity() {
        return Err(Error::SetTooSmall {
            size: set.len(),
            arity: c.arity(),
        });
    }
    Ok(match first_violation(c, set.members(), index_set)? {
        None => CanonicityCheck::Canonical,
        Some(v) => CanonicityCheck::Violated(v),
    })
}

pub fn is_i_canonical(c: &Coloring, set: &KSubset, index_set: &IndexSet) -> Result<bool> {
    Ok(check_canonical(c, set, index_set)?.is_canonical())
}

/// Verdict for every candidate index set on one subject set.
#[derive(Debug, Clone)]
pub struct CanonicityReport {
    pub subject: KSubset,
    pub passing: Vec<IndexSet>,
    pub rejected: Vec<(IndexSet, CanonicityViolation)>,
}

/// Test all 2^n candidate index sets, in cardinality-then-lex order.
pub fn canonicity_report(c: &Coloring, set: &KSubset) -> Result<CanonicityReport> {
    let mut passing = Vec::new();
    let mut rejected = Vec::new();
    for idx in IndexSet::enumerate_all(c.arity()) {
        match check_canonical(c, set, &idx)? {
            CanonicityCheck::Canonical => passing.push(idx),
            CanonicityCheck::Violated(v) => rejected.push((idx, v)),
        }
    }
    Ok(CanonicityReport {
        subject: set.clone(),
        passing,
        rejected,
    })
}

/// Depth-first search over increasing member sequences for the
/// lexicographically least set of the wanted size all of whose n-subsets
/// carry one color (the given target color, if any). Prefix consistency is
/// closed under extension, so the first complete branch is the least one.
fn search_monochromatic(
    c: &Coloring,
    size: usize,
    chosen: &mut Vec<usize>,
    fixed: Option<ColorId>,
    start: usize,
) -> Result<Option<KSubset>> {
    if chosen.len() == size {
        return Ok(Some(KSubset::new(chosen.clone())?));
    }
    let n = c.arity();
    let need = size - chosen.len();
    let universe = c.universe();
    if start + need > universe {
        return Ok(None);
    }
    let mut tuple = vec![0usize; n];
    'candidates: for v in start..=universe - need {
        let mut fixed_here = fixed;
        if chosen.len() + 1 >= n {
            // Every new n-subset is a (n-1)-subset of the prefix plus v.
            for idx in enumerate_ksubsets(chosen.len(), n - 1)? {
                for (slot, &i) in tuple.iter_mut().zip(idx.members()) {
                    *slot = chosen[i];
                }
                tuple[n - 1] = v;
                let col = c.color_of(&tuple)?;
                match fixed_here {
                    None => fixed_here = Some(col),
                    Some(f) if f != col => continue 'candidates,
                    _ => {}
                }
            }
        }
        chosen.push(v);
        let found = search_monochromatic(c, size, chosen, fixed_here, v + 1)?;
        chosen.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Lexicographically least homogeneous set of the given size, if any.
pub fn find_homogeneous(c: &Coloring, size: usize) -> Result<Option<KSubset>> {
    if size < c.arity() {
        return Err(Error::SetTooSmall {
            size,
            arity: c.arity(),
        });
    }
    search_monochromatic(c, size, &mut Vec::with_capacity(size), None, 0)
}

fn search_canonical(
    c: &Coloring,
    size: usize,
    candidates: &[IndexSet],
    chosen: &mut Vec<usize>,
    alive: u64,
    start: usize,
) -> Result<Option<(KSubset, IndexSet)>> {
    if chosen.len() == size {
        let first = alive.trailing_zeros() as usize;
        return Ok(Some((
            KSubset::new(chosen.clone())?,
            candidates[first].clone(),
        )));
    }
    let n = c.arity();
    let need = size - chosen.len();
    let universe = c.universe();
    if start + need > universe {
        return Ok(None);
    }
    for v in start..=universe - need {
        chosen.push(v);
        let mut alive_here = alive;
        if chosen.len() >= n {
            // Restriction closure: an index set dead on a prefix stays dead
            // on every extension, so only surviving candidates get rechecked.
            for (bit, idx) in candidates.iter().enumerate() {
                if alive_here >> bit & 1 == 1 && first_violation(c, chosen, idx)?.is_some() {
                    alive_here &= !(1 << bit);
                }
            }
        }
        if alive_here != 0 {
            let found = search_canonical(c, size, candidates, chosen, alive_here, v + 1)?;
            if found.is_some() {
                chosen.pop();
                return Ok(found);
            }
        }
        chosen.pop();
    }
    Ok(None)
}

/// Lexicographically least set of the given size that is I-canonical for
/// some I, together with that I (ties broken by smallest cardinality, then
/// lexicographically).
pub fn find_canonical(c: &Coloring, size: usize) -> Result<Option<(KSubset, IndexSet)>> {
    if size < c.arity() {
        return Err(Error::SetTooSmall {
            size,
            arity: c.arity(),
        });
    }
    let candidates = IndexSet::enumerate_all(c.arity());
    let all = (1u64 << candidates.len()) - 1;
    search_canonical(c, size, &candidates, &mut Vec::with_capacity(size), all, 0)
}

/// Rank-residue decomposition of a set: class 0 holds the first `gap`
/// ranks; class j (1 <= j <= gap) holds the ranks >= gap congruent to j-1
/// mod gap. Within any ambient ordering of the set itself, every n-subset
/// of an upper class is at least `gap`-sparse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub gap: usize,
    pub classes: Vec<KSubset>,
}

pub fn decompose(set: &KSubset, gap: usize) -> Result<Decomposition> {
    if gap == 0 {
        return Err(Error::ZeroGap);
    }
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); gap + 1];
    for (rank, &m) in set.members().iter().enumerate() {
        if rank < gap {
            classes[0].push(m);
        } else {
            classes[1 + (rank - gap) % gap].push(m);
        }
    }
    Ok(Decomposition {
        gap,
        classes: classes
            .into_iter()
            .map(|v| KSubset::new(v).expect("ranks ascend within a class"))
            .collect(),
    })
}

/// Per-class outcome when a decomposition is checked against an index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassStatus {
    /// Class 0 collects the low ranks and carries no canonicity claim.
    Exempt,
    /// Fewer than n members: nothing to compare.
    TriviallyCanonical,
    Canonical,
    Violated(CanonicityViolation),
}

impl ClassStatus {
    pub fn passes(&self) -> bool {
        !matches!(self, ClassStatus::Violated(_))
    }
}

#[derive(Debug, Clone)]
pub struct ClassVerdict {
    pub class_index: usize,
    pub members: KSubset,
    pub status: ClassStatus,
}

/// Check every upper class of a decomposition for I-canonicity.
pub fn class_verdicts(
    c: &Coloring,
    decomposition: &Decomposition,
    index_set: &IndexSet,
) -> Result<Vec<ClassVerdict>> {
    let n = c.arity();
    let mut out = Vec::with_capacity(decomposition.classes.len());
    for (class_index, class) in decomposition.classes.iter().enumerate() {
        let status = if class_index == 0 {
            ClassStatus::Exempt
        } else if class.len() < n {
            ClassStatus::TriviallyCanonical
        } else {
            match check_canonical(c, class, index_set)? {
                CanonicityCheck::Canonical => ClassStatus::Canonical,
                CanonicityCheck::Violated(v) => ClassStatus::Violated(v),
            }
        };
        out.push(ClassVerdict {
            class_index,
            members: class.clone(),
            status,
        });
    }
    Ok(out)
}

/// Outcome of the decomposition check for one atom.
#[derive(Debug, Clone)]
pub enum AtomOutcome {
    /// No set of the requested size is homogeneous for this atom.
    NoHomogeneousSet,
    /// All upper classes pass at this gap (the smallest that works).
    Passed { gap: usize, classes: Vec<ClassVerdict> },
    /// Still failing at the largest gap tried; verdicts are from that gap.
    Failed {
        max_gap: usize,
        classes: Vec<ClassVerdict>,
    },
}

#[derive(Debug, Clone)]
pub struct AtomVerdict {
    pub atom_index: usize,
    pub signature_hex: String,
    pub canonical: IndexSet,
    pub homogeneous_set: Option<KSubset>,
    pub outcome: AtomOutcome,
}

#[derive(Debug, Clone)]
pub struct TheoremVerification {
    pub arity: usize,
    pub universe: usize,
    pub size: usize,
    pub max_gap: usize,
    pub verdicts: Vec<AtomVerdict>,
    /// Smallest gap at which every atom with a found set passes; None when
    /// some atom fails even at max_gap.
    pub minimal_gap: Option<usize>,
    pub passed: bool,
}

/// Coloring of 2n-subsets by atom index, for targeted homogeneity search.
fn atom_index_coloring(c: &Coloring, atom_list: &[Atom]) -> Result<Coloring> {
    let n2 = 2 * c.arity();
    let universe = c.universe();
    let total: usize = atom_list.iter().map(|a| a.members.len()).sum();
    let mut table = vec![0u64; total];
    for atom in atom_list {
        for m in &atom.members {
            table[lex_rank(universe, m.members()) as usize] = atom.index as ColorId;
        }
    }
    Coloring::from_colors(n2, universe, table)
}

/// For every atom: find the least set of the given size that is homogeneous
/// for it, then scan gaps 1..=max_gap until every upper class of the
/// decomposition is I(Q)-canonical. Passing overall means no atom with a
/// found set kept failing through max_gap.
pub fn verify_theorem1(c: &Coloring, size: usize, max_gap: usize) -> Result<TheoremVerification> {
    let n = c.arity();
    if size < 2 * n {
        return Err(Error::SetTooSmall {
            size,
            arity: 2 * n,
        });
    }
    if max_gap == 0 {
        return Err(Error::ZeroGap);
    }
    let atom_list = atoms(c)?;
    let by_atom = atom_index_coloring(c, &atom_list)?;
    let mut verdicts = Vec::with_capacity(atom_list.len());
    let mut passed = true;
    let mut minimal_gap = 1;
    for atom in &atom_list {
        let found = search_monochromatic(
            &by_atom,
            size,
            &mut Vec::with_capacity(size),
            Some(atom.index as ColorId),
            0,
        )?;
        let outcome = match &found {
            None => AtomOutcome::NoHomogeneousSet,
            Some(set) => {
                let mut result = None;
                for gap in 1..=max_gap {
                    let verdict = class_verdicts(c, &decompose(set, gap)?, &atom.canonical)?;
                    if verdict.iter().all(|v| v.status.passes()) {
                        result = Some(AtomOutcome::Passed {
                            gap,
                            classes: verdict,
                        });
                        minimal_gap = minimal_gap.max(gap);
                        break;
                    } else if gap == max_gap {
                        result = Some(AtomOutcome::Failed {
                            max_gap,
                            classes: verdict,
                        });
                        passed = false;
                    }
                }
                result.expect("gap scan covers 1..=max_gap")
            }
        };
        verdicts.push(AtomVerdict {
            atom_index: atom.index,
            signature_hex: atom.signature.hex(),
            canonical: atom.canonical.clone(),
            homogeneous_set: found,
            outcome,
        });
    }
    Ok(TheoremVerification {
        arity: n,
        universe: c.universe(),
        size,
        max_gap,
        verdicts,
        minimal_gap: if passed { Some(minimal_gap) } else { None },
        passed,
    })
}

/// How a function on increasing tuples behaves on its best canonical set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionClass {
    /// Canonical with the empty index set: constant on the witness.
    UpwardConstant,
    /// Canonical with a nonempty index set I: values coincide exactly on
    /// agreement over I.
    SelectivelyUpwardInjective,
}

#[derive(Debug, Clone)]
pub struct FunctionAnalysis {
    pub arity: usize,
    pub universe: usize,
    pub size_cap: usize,
    pub classification: FunctionClass,
    pub witness: KSubset,
    pub index_set: IndexSet,
}

/// Largest canonical set (complete search downward from the cap) for a
/// coloring viewed as a function table.
pub fn analyze_coloring(c: &Coloring, size_cap: usize) -> Result<FunctionAnalysis> {
    let n = c.arity();
    if size_cap < n {
        return Err(Error::SetTooSmall {
            size: size_cap,
            arity: n,
        });
    }
    let cap = size_cap.min(c.universe());
    for size in (n..=cap).rev() {
        if let Some((witness, index_set)) = find_canonical(c, size)? {
            let classification = if index_set.is_empty() {
                FunctionClass::UpwardConstant
            } else {
                FunctionClass::SelectivelyUpwardInjective
            };
            return Ok(FunctionAnalysis {
                arity: n,
                universe: c.universe(),
                size_cap,
                classification,
                witness,
                index_set,
            });
        }
    }
    unreachable!("every n-subset is canonical for every index set")
}

/// Same, for a raw function on increasing n-tuples.
pub fn analyze_function(
    arity: usize,
    universe: usize,
    f: impl FnMut(&[usize]) -> ColorId,
    size_cap: usize,
) -> Result<FunctionAnalysis> {
    analyze_coloring(&Coloring::from_fn(arity, universe, f)?, size_cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::generators;

    fn ks(v: &[usize]) -> KSubset {
        KSubset::new(v.to_vec()).unwrap()
    }

    fn iset(n: usize, v: &[usize]) -> IndexSet {
        IndexSet::new(n, v.to_vec()).unwrap()
    }

    #[test]
    fn homogeneity_parity_example() {
        let parity = Coloring::from_fn(2, 10, |s| ((s[0] + s[1]) % 2) as u64).unwrap();
        assert!(is_homogeneous(&parity, &ks(&[0, 2, 4, 6])).unwrap());
        assert!(!is_homogeneous(&parity, &ks(&[0, 1, 2])).unwrap());
        assert!(matches!(
            is_homogeneous(&parity, &ks(&[3])),
            Err(Error::SetTooSmall { .. })
        ));
    }

    #[test]
    fn sidon_set_is_fully_canonical_for_sums() {
        let sums = generators::sidon_sum(2, 17).unwrap();
        let x = ks(&[1, 2, 4, 8, 16]);
        assert!(is_i_canonical(&sums, &x, &iset(2, &[0, 1])).unwrap());
        // Pinning only one index fails: {1,2} and {1,4} share no color.
        assert!(!is_i_canonical(&sums, &x, &iset(2, &[0])).unwrap());
    }

    #[test]
    fn report_pins_exactly_the_min_index() {
        let c = generators::min(2, 12).unwrap();
        let report = canonicity_report(&c, &ks(&[2, 5, 8, 11])).unwrap();
        let passing: Vec<String> = report.passing.iter().map(|i| i.to_string()).collect();
        assert_eq!(passing, vec!["{0}"]);
        assert_eq!(report.rejected.len(), 3);
        // The empty-set rejection must exhibit two equal-on-I tuples with
        // distinct colors.
        let (_, v) = &report.rejected[0];
        assert_eq!(v.kind, ViolationKind::AgreeOnIndicesDistinctColors);
    }

    #[test]
    fn empty_index_set_means_homogeneous() {
        let c = generators::random(2, 9, 5, 3).unwrap();
        for set in enumerate_ksubsets(9, 4).unwrap() {
            assert_eq!(
                is_i_canonical(&c, &set, &IndexSet::empty(2)).unwrap(),
                is_homogeneous(&c, &set).unwrap()
            );
        }
    }

    #[test]
    fn find_homogeneous_parity_example() {
        let parity = Coloring::from_fn(1, 10, |s| (s[0] % 2) as u64).unwrap();
        let found = find_homogeneous(&parity, 5).unwrap().unwrap();
        assert_eq!(found.members(), &[0, 2, 4, 6, 8]);
    }

    #[test]
    fn find_homogeneous_absent_when_injective() {
        let c = generators::injective(2, 8).unwrap();
        assert!(find_homogeneous(&c, 3).unwrap().is_none());
    }

    #[test]
    fn find_canonical_prefers_small_then_lex_index_sets() {
        let c = generators::constant(2, 8).unwrap();
        let (set, idx) = find_canonical(&c, 4).unwrap().unwrap();
        assert_eq!(set.members(), &[0, 1, 2, 3]);
        assert!(idx.is_empty());

        let c = generators::min(2, 8).unwrap();
        let (set, idx) = find_canonical(&c, 4).unwrap().unwrap();
        assert_eq!(set.members(), &[0, 1, 2, 3]);
        assert_eq!(idx.indices(), &[0]);
    }

    #[test]
    fn every_five_element_coloring_has_a_canonical_triple() {
        // Arity 1, universe 5: either three members share a color or three
        // carry pairwise distinct ones; find_canonical must always land.
        // Exhaust all color tables up to 5 colors.
        fn tables(len: usize) -> Vec<Vec<u64>> {
            let mut out = vec![vec![]];
            for _ in 0..len {
                let mut next = Vec::new();
                for t in &out {
                    let used = t.iter().copied().max().map_or(0, |m| m + 1);
                    for c in 0..=used {
                        let mut t2 = t.clone();
                        t2.push(c);
                        next.push(t2);
                    }
                }
                out = next;
            }
            out
        }
        for table in tables(5) {
            let c = Coloring::from_colors(1, 5, table).unwrap();
            assert!(find_canonical(&c, 3).unwrap().is_some());
        }
    }

    #[test]
    fn decompose_worked_example() {
        let x = ks(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]);
        let d = decompose(&x, 3).unwrap();
        assert_eq!(d.classes.len(), 4);
        assert_eq!(d.classes[0].members(), &[0, 1, 2]);
        assert_eq!(d.classes[1].members(), &[3, 6, 9]);
        assert_eq!(d.classes[2].members(), &[4, 7, 10]);
        assert_eq!(d.classes[3].members(), &[5, 8, 11]);
    }

    #[test]
    fn decompose_oversized_gap_is_trivial() {
        let x = ks(&[4, 9, 13]);
        let d = decompose(&x, 5).unwrap();
        assert_eq!(d.classes[0].members(), &[4, 9, 13]);
        assert!(d.classes[1..].iter().all(|c| c.is_empty()));
        assert!(matches!(decompose(&x, 0), Err(Error::ZeroGap)));
    }

    #[test]
    fn decomposition_classes_stay_sparse() {
        // Sparsity is measured inside the decomposed set itself.
        use crate::ground::{sparsity, RankedSet, Sparsity};
        let members: Vec<usize> = (0..40).map(|i| 3 * i + 7).collect();
        let x = ks(&members);
        let ground = RankedSet::new(members.clone()).unwrap();
        for gap in 1..=6 {
            let d = decompose(&x, gap).unwrap();
            for class in &d.classes[1..] {
                for pair in enumerate_ksubsets(class.len(), 2.min(class.len())).unwrap() {
                    let sub = class.select(pair.members());
                    match sparsity(&ground, &sub).unwrap() {
                        Sparsity::Finite(v) => assert!(v >= gap),
                        Sparsity::Infinite => {}
                    }
                }
            }
        }
    }

    #[test]
    fn verify_min_coloring_passes() {
        let c = generators::min(2, 14).unwrap();
        let v = verify_theorem1(&c, 6, 8).unwrap();
        assert!(v.passed);
        assert!(v.minimal_gap.is_some());
        for verdict in &v.verdicts {
            if let AtomOutcome::Passed { classes, .. } = &verdict.outcome {
                assert!(classes[0].status == ClassStatus::Exempt);
            }
        }
    }

    #[test]
    fn verify_arity_one_always_passes_at_gap_one() {
        for seed in 0..20 {
            let c = generators::random(1, 50, seed, (seed % 50) + 1).unwrap();
            let v = verify_theorem1(&c, 4, 1).unwrap();
            assert!(v.passed, "seed {seed}");
            assert_eq!(v.minimal_gap, Some(1));
        }
    }

    #[test]
    fn analyze_recognizes_projections_and_constants() {
        let a = analyze_function(1, 12, |s| s[0] as u64, 12).unwrap();
        assert_eq!(a.classification, FunctionClass::SelectivelyUpwardInjective);
        assert_eq!(a.index_set.indices(), &[0]);
        assert_eq!(a.witness.len(), 12);

        let a = analyze_function(2, 12, |_| 9, 12).unwrap();
        assert_eq!(a.classification, FunctionClass::UpwardConstant);
        assert_eq!(a.witness.len(), 12);

        let a = analyze_function(2, 17, |s| (s[0] + s[1]) as u64, 5).unwrap();
        assert_eq!(a.classification, FunctionClass::SelectivelyUpwardInjective);
        assert_eq!(a.index_set.indices(), &[0, 1]);
        assert_eq!(a.witness.len(), 5);
        // The witness must itself verify.
        let sums = generators::sidon_sum(2, 17).unwrap();
        assert!(is_i_canonical(&sums, &a.witness, &a.index_set).unwrap());
    }

    #[test]
    fn size_validation() {
        let c = generators::min(2, 10).unwrap();
        assert!(matches!(
            find_canonical(&c, 1),
            Err(Error::SetTooSmall { .. })
        ));
        assert!(matches!(
            verify_theorem1(&c, 3, 4),
            Err(Error::SetTooSmall { .. })
        ));
        assert!(matches!(
            verify_theorem1(&c, 4, 0),
            Err(Error::ZeroGap)
        ));
        // Oversized requests are a valid absence, not an error.
        assert!(find_homogeneous(&c, 11).unwrap().is_none());
    }
}
