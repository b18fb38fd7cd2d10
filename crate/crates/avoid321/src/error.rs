//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The word is not a rearrangement of `1..=n`.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// A descent-set member lies outside its ambient range.
    #[error("descent index {index} out of range 1..={max}")]
    DescentOutOfRange { index: usize, max: usize },

    /// A step word fails the Dyck condition (balanced, prefixes ≥ 0).
    #[error("invalid Dyck path: {0}")]
    InvalidDyckPath(String),

    /// A tableau violates shape or row/column monotonicity.
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    /// The two tableaux of a pair have different shapes.
    #[error("tableau shapes differ: ({0}, {1}) vs ({2}, {3})")]
    ShapeMismatch(usize, usize, usize, usize),

    /// Row insertion left the two-row region, i.e. the permutation
    /// contains a decreasing subsequence of length three.
    #[error("permutation is not 321-avoiding: {0}")]
    PatternViolation(String),

    /// An enumeration size exceeded the configured ceiling.
    #[error("n = {n} exceeds the enumeration bound {bound}")]
    ResourceLimit { n: usize, bound: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Exact polynomial division with a nonzero remainder.
    #[error("polynomial division is not exact: {0}")]
    NotDivisible(String),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    /// Substitution payload must be a single monomial or a constant.
    #[error("substitution requires a monomial or constant, got {0} terms")]
    NotMonomial(usize),

    /// `0^e` with `e < 0` has no value.
    #[error("cannot substitute 0 into a negative power")]
    ZeroToNegativePower,

    /// Inverting a coefficient other than ±1 leaves the integers.
    #[error("cannot raise coefficient {0} to a negative power over the integers")]
    NonUnitCoefficient(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
