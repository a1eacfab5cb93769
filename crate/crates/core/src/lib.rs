//! Finite-scale machinery for canonical partitions of n-element subsets.
//!
//! A coloring assigns a color to every n-subset of a finite universe. The
//! library answers three families of questions about it:
//!
//! * structure: group the 2n-subsets into atoms by their internal color
//!   agreements, and read off which slots each atom pins ([`partition`]);
//! * canonicity: find or verify sets on which color equality coincides
//!   with agreement on a fixed slot set, and decompose arbitrary sets into
//!   residue classes that are canonical ([`canonicity`]);
//! * reduction: drive a sparse start set through a schedule of selection
//!   steps whose terminal set shares exactly the pinned slots with the
//!   start ([`cascade`]).
//!
//! [`oracle`] replays key definitions in deliberately naive form so tests
//! can cross-check the fast paths against the literal meaning.

pub mod canonicity;
pub mod cascade;
pub mod coloring;
pub mod error;
pub mod ground;
pub mod oracle;
pub mod partition;
pub mod positions;
pub mod subsets;

pub use canonicity::{
    analyze_coloring, analyze_function, canonicity_report, check_canonical, class_verdicts,
    decompose, find_canonical, find_homogeneous, is_homogeneous, is_i_canonical, verify_theorem1,
    AtomOutcome, AtomVerdict, CanonicityCheck, CanonicityReport, CanonicityViolation, ClassStatus,
    ClassVerdict, Decomposition, FunctionAnalysis, FunctionClass, TheoremVerification,
    ViolationKind,
};
pub use cascade::{
    build_cascade, core_reduce, full_schedule, hat_normal_form, shift_witness, step_construct,
    Cascade, CascadeStep, Schedule, HOMOGENEITY_CHECK_LIMIT,
};
pub use coloring::{generators, ColorId, Coloring};
pub use error::{Error, Result};
pub use ground::{reach, rho, sparsity, RankedSet, Sparsity, SparsityBound};
pub use oracle::{exhaustive_canonical, min_gap_empirical, q_equiv, MinGapScan, QEquivWitness};
pub use partition::{atoms, related, signature_of, signature_space_bound, Atom, AtomSignature};
pub use positions::{
    index_agreement, pair_at, pair_count, pair_index, position_map, IndexSet, PartialPositionMap,
    PositionPairs, PositionSet,
};
pub use subsets::{binomial, enumerate_ksubsets, lex_rank, KSubset};
