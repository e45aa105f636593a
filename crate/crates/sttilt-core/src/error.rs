//! Error taxonomy shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode surfaced by the library.
///
/// Variants carry enough context to print an actionable message; callers
/// that need structured data (e.g. the witness pair of a lattice failure)
/// match on the variant fields.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A relation term has length < 2, or the quotient stayed
    /// infinite-dimensional within the path-length bound.
    #[error("presentation is not admissible: {0}")]
    NonAdmissible(String),

    /// A path in a relation is not composable (target of one arrow differs
    /// from the source of the next).
    #[error("relation contains a non-composable path: {0}")]
    InconsistentPath(String),

    /// The prime field is too small for a trace-form radical computation.
    #[error("prime field of order {p} is too small for a dimension-{dim} algebra; use a prime > {dim} or rationals")]
    FieldTooSmall { p: u64, dim: usize },

    /// A nonzero off-diagonal Peirce block has an empty generator set; the
    /// offending (source, target) vertex pair is reported.
    #[error("generator-set condition fails on the Peirce block ({i}, {j})")]
    Condition1Violated { i: usize, j: usize },

    /// A three-term complex did not reduce to two terms during
    /// minimization in a context where reduction is guaranteed.
    #[error("complex does not reduce to two terms (internal invariant violated): {0}")]
    NotTwoTermReducible(String),

    /// An endomorphism algebra has a semisimple quotient larger than the
    /// ground field, so Krull–Schmidt bookkeeping cannot proceed.
    #[error("summand does not split over the ground field: End/rad has dimension {dim}")]
    SplitFailure { dim: usize },

    /// Poset enumeration exceeded the configured element cap.
    #[error("enumeration exceeded the cap of {cap} elements; the algebra may have infinitely many support τ-tilting modules")]
    CapExceeded { cap: usize },

    /// Hasse input that is supposed to be acyclic contains a cycle.
    #[error("covering relation contains a cycle through element {element}")]
    CycleDetected { element: usize },

    /// A join or meet does not exist; the witness pair is reported.
    #[error("poset is not a lattice: elements {a} and {b} have no unique {kind}")]
    NotLattice { a: usize, b: usize, kind: &'static str },

    /// Atom/coatom pairing failed: no or several candidate indices.
    #[error("atom/coatom pairing failed: {0}")]
    PairingFailed(String),

    /// A summand key is not realized by any element of the labeled poset.
    #[error("no element of the poset realizes the requested summand key")]
    KeyNotRealized,

    /// A reconstruction predicate matched no element.
    #[error("no element satisfies the defining conditions: {0}")]
    NotFound(String),

    /// A reconstruction predicate matched several elements.
    #[error("several elements satisfy the defining conditions: {0}")]
    Ambiguous(String),

    /// A family or fixture specification is invalid.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// Input/output or serialization failure (CLI surface).
    #[error("i/o error: {0}")]
    Io(String),
}
