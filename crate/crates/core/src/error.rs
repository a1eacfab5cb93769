use crate::ground::{Sparsity, SparsityBound};
use thiserror::Error;

/// Everything that can go wrong inside the engine. Input-shaped problems
/// (bad subsets, wrong arities) and construction failures (sparsity or
/// headroom too small) share this enum so callers get one error channel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground set must be nonempty")]
    EmptyGroundSet,
    #[error("elements must be strictly increasing (offending index {position})")]
    NotStrictlyIncreasing { position: usize },
    #[error("{element} is not a member of the ground set")]
    NotAMember { element: usize },
    #[error("{element} must rank above the ground-set minimum")]
    NotInTail { element: usize },
    #[error("cannot draw {subset}-element subsets from a universe of {universe}")]
    SubsetTooLarge { subset: usize, universe: usize },
    #[error("expected a subset of size {expected}, got {actual}")]
    WrongSubsetSize { expected: usize, actual: usize },
    #[error("arity mismatch: expected {expected}, got {actual}")]
    ArityMismatch { expected: usize, actual: usize },
    #[error("position {position} is out of range: position sets live inside 0..{bound}")]
    PositionOutOfRange { position: usize, bound: usize },
    #[error("index {index} is out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("subset member {element} lies outside universe 0..{universe}")]
    OutsideUniverse { element: usize, universe: usize },
    #[error("color table has {actual} entries but the universe has {expected} subsets")]
    ColorTableSize { expected: u128, actual: usize },
    #[error("a signature for arity {arity} has {expected} pair bits, got {actual}")]
    SignatureSize {
        arity: usize,
        expected: usize,
        actual: usize,
    },
    #[error("universe of {universe} is too small: need at least {needed} elements")]
    UniverseTooSmall { universe: usize, needed: usize },
    #[error("refusing to enumerate {count} subsets (cap {cap})")]
    TooManySubsets { count: u128, cap: u128 },
    #[error("set of {size} elements has no {arity}-subsets to check")]
    SetTooSmall { size: usize, arity: usize },
    #[error("gap must be at least 1")]
    ZeroGap,
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("color count must be at least 1")]
    ZeroColors,
    #[error("cascade constructions need arity >= 2; arity-1 colorings go straight to the decomposition verifier")]
    CascadeArityTooSmall,
    #[error("construction level must be at least 1")]
    ZeroLevel,
    #[error("sparsity {actual} is below the required bound {required}")]
    InsufficientSparsity {
        required: SparsityBound,
        actual: Sparsity,
    },
    #[error("construction touches rank {needed} but the ground set has only {available} elements")]
    InsufficientHeadroom { needed: u128, available: usize },
    #[error("step selections do not match: {detail}")]
    SelectionMismatch { detail: String },
    #[error("schedule pair #{index} is not positive in the atom signature")]
    PairNotPositive { index: usize },
    #[error("cascade step {index} failed: {source}")]
    StepFailed {
        index: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("{mismatches} of {total} tuples in the ground set fall outside the atom")]
    AtomMismatch { mismatches: usize, total: usize },
    #[error("terminal intersection {actual:?} does not match the canonical index selection {expected:?}")]
    TerminalIntersection {
        expected: Vec<usize>,
        actual: Vec<usize>,
    },
    #[error("position {index} still selects into the target; only dropped positions can be shifted")]
    ShiftIndexRetained { index: usize },
    #[error("replacement must lie in ({low}, {high}] within the ground set")]
    ReplacementOutOfRange { low: usize, high: usize },
    #[error("replacement sits {distance} ranks above the anchor; at least {required} are required")]
    ShiftTooClose { distance: usize, required: usize },
    #[error("rewritten witness failed re-verification: {detail}")]
    WitnessReconstruction { detail: String },
    #[error("normal form collides at position {index}: {first} does not precede {second}")]
    RankCollision {
        index: usize,
        first: usize,
        second: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
