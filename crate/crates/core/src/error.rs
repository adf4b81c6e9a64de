use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed permutation `{text}`: {reason}")]
    MalformedPermutation { text: String, reason: String },

    #[error("point {point} is outside 1..={degree}")]
    PointOutOfRange { point: u64, degree: usize },

    #[error("point {0} appears more than once")]
    RepeatedPoint(u32),

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("group order {order} exceeds the subgroup enumeration bound {bound}")]
    OrderBoundExceeded { order: usize, bound: usize },

    #[error("the given group is not a subgroup of the ambient group")]
    NotSubgroup,

    #[error("malformed group description: {0}")]
    MalformedGroup(String),

    #[error("unknown group `{0}` (expected klein4, icosahedral, cyclic:k, trivial:n or a file)")]
    UnknownGroup(String),

    #[error("malformed tree `{text}`: {reason}")]
    MalformedTree { text: String, reason: String },

    #[error("leaf {0} occurs more than once")]
    DuplicateLeaf(u32),

    #[error("internal vertex with a single child")]
    UnaryVertex,

    #[error("{leaves} leaves exceed the enumeration bound of {bound}")]
    TooManyLeaves { leaves: usize, bound: usize },

    #[error("tree leaves {tree:?} do not match the points {points:?} acted on by the group")]
    LeafSetMismatch { tree: Vec<u32>, points: Vec<u32> },

    #[error("permutation of degree {degree} cannot act on leaf {leaf}")]
    DegreeTooSmall { degree: usize, leaf: u32 },

    #[error("tree is not fixed by every element of the group")]
    NotFixed,

    #[error("the group does not act simply on its points")]
    NonSimpleAction,

    #[error("the trivial group has no fixed-tree equation; use the base tree series")]
    TrivialGroup,

    #[error("series truncation orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("exp requires a zero constant term")]
    NonzeroConstantTerm,

    #[error("non-integral count: {0}")]
    NonIntegral(String),

    #[error("negative count: {0}")]
    NegativeCount(String),

    #[error("generation stopped after {limit} trees (budget exhausted)")]
    BudgetExceeded { limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
