//! Error type shared across the crate.

use thiserror::Error;

/// Convenience alias used by every fallible operation in this crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All the ways lattice construction, graph building, decoding, or I/O can fail.
#[derive(Debug, Error)]
pub enum Error {
    /// A matrix that was supposed to be invertible is not. `step` is the
    /// 0-based elimination step at which no nonzero pivot could be found.
    #[error("matrix is singular: no nonzero pivot at elimination step {step}")]
    SingularMatrix { step: usize },

    /// Input rows of unequal length, or a vector whose length does not match
    /// the lattice dimension.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A level of the nested code chain is not contained in the previous one.
    #[error("code nesting violated: row {row} of level {level} is not in the span of level {outer}")]
    NonNestedCodes { level: usize, outer: usize, row: usize },

    /// A level's generator matrix has linearly dependent rows over GF(2).
    #[error("generator of level {level} has dependent rows (row {row} reduces to zero)")]
    DependentRows { level: usize, row: usize },

    /// Structural requirements on the nested code chain are violated.
    #[error("invalid code chain: {reason}")]
    InvalidCodeChain { reason: String },

    /// The label-group structure required by the decoder does not hold.
    #[error("lattice violates label-group structure at coordinate {coordinate}: {reason}")]
    ModelViolation { coordinate: usize, reason: String },

    /// A check node's configuration space is too large to enumerate.
    #[error("check {check} has {configurations} label configurations, above the enumeration cap {cap}")]
    EnumerationCapExceeded {
        check: usize,
        configurations: u128,
        cap: u128,
    },

    /// A brute-force helper was asked to run outside its tractable range.
    #[error("{what} supports dimensions up to {limit}, got {n}")]
    GuardExceeded {
        what: &'static str,
        limit: usize,
        n: usize,
    },

    /// Shortest-vector enumeration would need a search radius above the cap.
    #[error("shortest-vector search radius {needed} exceeds limit {limit}; supply the coding gain instead")]
    RadiusLimitExceeded { needed: u64, limit: u64 },

    /// Malformed text input. `line` is 1-based.
    #[error("{source_name} line {line}: {reason}")]
    Parse {
        source_name: String,
        line: usize,
        reason: String,
    },

    /// Bad argument values (empty grids, zero trials, and the like).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Builds a parse error with a 1-based line number.
    pub fn parse(source_name: impl Into<String>, line: usize, reason: impl Into<String>) -> Self {
        Error::Parse {
            source_name: source_name.into(),
            line,
            reason: reason.into(),
        }
    }
}
