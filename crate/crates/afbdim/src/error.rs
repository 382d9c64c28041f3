use thiserror::Error;

/// Errors raised across the crate. Geometric validation problems are *not*
/// errors — they are reported through [`crate::diagram::ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cover relation contains a directed cycle")]
    CycleInCovers,
    #[error("cover ({0}, {1}) is implied by other covers; input is not transitively reduced")]
    RedundantCover(String, String),
    #[error("unknown element id {0:?}")]
    UnknownElement(String),
    #[error("duplicate element id {0:?}")]
    DuplicateElement(String),
    #[error("pair ({0}, {1}) is not incomparable")]
    PairNotIncomparable(String, String),
    #[error("extension {0} is not a linear extension of the poset")]
    NotALinearExtension(usize),
    #[error("search budget exceeded: |Inc(P)| = {0} is above the limit {1}")]
    SearchBudgetExceeded(usize, usize),
    #[error("element {0} is not minimal")]
    NotMinimal(String),
    #[error("poset is not connected")]
    NotConnected,
    #[error("standard example requires d >= 2, got {0}")]
    StandardExampleTooSmall(usize),

    #[error("diagram failed validation: {0}")]
    NotValidated(String),
    #[error("diagram is not accessible from below; violators: {0:?}")]
    NotAfb(Vec<String>),
    #[error("elements {0} and {1} are not comparable")]
    NotComparable(String, String),
    #[error("element {0} is not in the queried up-set")]
    NotInUpset(String),
    #[error("element {0} is not in the queried down-set")]
    NotInDownset(String),
    #[error("pair ({0}, {1}) received label {2} in a down-set; diagram violates accessibility")]
    AfbViolation(String, String, String),
    #[error("element {0} is not below {1}")]
    NotBelowY(String, String),
    #[error("meet candidates below {0} have no unique minimal element: {1:?}")]
    UniquenessViolated(String, Vec<String>),
    #[error("lens boundary is not a simple closed walk: {0}")]
    BoundaryNotSimple(String),

    #[error("poset has no zero")]
    NoZero,
    #[error("element {0} is not a zero of the queried subdiagram")]
    NotAZero(String),
    #[error("set {0:?} expected to be reversible but contains an alternating cycle")]
    InternalIrreversible(String),
    #[error("cover set {0:?} is not reversible; input diagram or construction is invalid")]
    IrreversibleSet(String),
    #[error("constructed realizer failed verification: {0}")]
    VerificationFailed(String),

    #[error("rational literal {0:?} is malformed")]
    BadRational(String),
    #[error("{0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
