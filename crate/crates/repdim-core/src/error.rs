//! Error type shared by the whole core crate.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Bad user input (malformed data, non-prime modulus, mismatched shapes).
    #[error("input error: {0}")]
    Input(String),

    /// A declared structure failed an internal consistency check.
    #[error("check failed: {0}")]
    Check(String),

    /// The two-sided ideal did not stabilize below the path-length cap, so
    /// the quotient algebra may be infinite dimensional as presented.
    #[error("ideal not admissible at cap {cap}: basis still growing")]
    IdealNotAdmissible { cap: usize },

    /// The socle of the algebra is not a two-sided ideal in the computed
    /// presentation (should not happen for valid input).
    #[error("socle is not a two-sided ideal: {0}")]
    SocleNotIdeal(String),

    /// The algebra is not selfinjective where selfinjectivity is required.
    #[error("algebra is not selfinjective: {0}")]
    NotSelfinjective(String),

    /// The two algebras are not socle equivalent under the supplied
    /// identification data.
    #[error("not socle equivalent as presented: {0}")]
    NotSocleEquivalent(String),

    /// A module failed to satisfy a hypothesis of the requested operation.
    #[error("module hypothesis failed: {0}")]
    ModuleHypothesis(String),

    /// A short exact sequence or resolution stage could not be rebuilt over
    /// the partner algebra: no choice of replacement maps for the projective
    /// blocks yields an exact sequence.
    #[error("transfer obstructed: {0}")]
    TransferObstructed(String),

    /// A resolution or syzygy iteration exceeded its cap.
    #[error("iteration cap {cap} exceeded during {what}")]
    CapExceeded { what: String, cap: usize },

    /// Splitting a module over Q hit a residue field the rational-root
    /// search cannot decide.
    #[error("decomposition undecided over Q: {0}")]
    UndecidedOverQ(String),
}
