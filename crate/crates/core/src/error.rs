//! Error types shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameters outside the validity range of an identity or operation.
    #[error("parameter out of range: {0}")]
    Range(String),

    /// A polynomial division by (X - 1) left a remainder. The divided
    /// differences used by the identity checks are exact by construction,
    /// so this signals an implementation bug, never bad input.
    #[error("non-exact polynomial division by (X - 1): remainder {remainder}")]
    NonExactDivision { remainder: String },

    /// Malformed permutation input.
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    /// Group closure exceeded the configured order bound.
    #[error("group closure exceeded the order bound {bound}")]
    GroupTooLarge { bound: u64 },

    /// The operation requires a transitive permutation group.
    #[error("permutation group is not transitive on 1..={degree}")]
    NotTransitive { degree: usize },

    /// Consecutive colors repeat, so the color sequence is not a legal path.
    #[error("illegal color path: {0}")]
    IllegalPath(String),

    /// A word violates the coset-word invariants.
    #[error("invalid coset word: {0}")]
    InvalidWord(String),

    /// An enumeration would exceed the configured bound.
    #[error("enumeration of {needed} states exceeds the bound {bound}")]
    EnumerationTooLarge { needed: u128, bound: u64 },

    /// A product was requested for a word pair absent from the table.
    #[error("missing structure constants for pair ({u}) * ({v})")]
    MissingStructureConstants { u: String, v: String },

    /// Equation systems need at least two convolution factors.
    #[error("skeleton too short: length {len}, need at least 2")]
    SkeletonTooShort { len: usize },

    /// The word is not expressible from the requested system, either because
    /// it is itself a sub-base word or because of a rank defect.
    #[error("word ({0}) is not expressible in the leading-term system")]
    NotExpressible(String),

    /// A counting invariant that must hold unconditionally was violated.
    /// Reaching this is a mathematical regression, never a usage error.
    #[error("oracle invariant violated: {0}")]
    OracleInvariant(String),

    /// Structure-constant cache file is malformed or does not match.
    #[error("cache error: {0}")]
    Cache(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
