//! Error type shared by all modules of the crate.

use alloc::string::String;
use core::fmt;

/// Errors surfaced by the engine.
///
/// `Internal` marks a violated internal invariant (a bug, never user input);
/// callers are expected to treat it differently from input errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A Kupisch series violates the linear or cyclic admissibility
    /// invariants; `index` is the first offending position (1-based).
    InvalidKupisch { index: usize, reason: String },
    /// A relation is not a composable path of the quiver, or is too short.
    InvalidRelation(String),
    /// The relation ideal is not admissible: the algebra is
    /// infinite-dimensional. Carries a cycle (vertex list) with no relation.
    NotAdmissible { cycle: String },
    /// Matrix/vector dimensions do not match.
    DimensionMismatch(String),
    /// A sequence that was required to be exact is not.
    NotExact(String),
    /// End terms of a sequence must be simple modules from the fixed set.
    EndsNotSimple(String),
    /// An interior term of a sequence is not uniserial (interval).
    NotUniserial(String),
    /// The exact-sequence length data violates the image-length recurrences;
    /// carries the first failed index.
    InvalidLengths { index: usize, reason: String },
    /// AR translate requested for a projective module.
    NoArSequence(String),
    /// A module operation received a module that is not indecomposable.
    NotIndecomposable(String),
    /// The projective dimension found does not match the expected one.
    WrongProjectiveDimension { expected: usize, found: usize },
    /// A requested A-infinity value lies outside the trusted degree range.
    UntrustedDegree { degree: usize, trusted: usize },
    /// Input validation failure not covered by a specific variant.
    InvalidInput(String),
    /// Violated internal invariant; indicates a bug, never bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidKupisch { index, reason } => {
                write!(f, "invalid Kupisch series at position {index}: {reason}")
            }
            Error::InvalidRelation(s) => write!(f, "invalid relation: {s}"),
            Error::NotAdmissible { cycle } => write!(
                f,
                "relation ideal is not admissible (infinite-dimensional algebra): cycle {cycle} has no relation"
            ),
            Error::DimensionMismatch(s) => write!(f, "dimension mismatch: {s}"),
            Error::NotExact(s) => write!(f, "sequence is not exact: {s}"),
            Error::EndsNotSimple(s) => write!(f, "sequence ends are not simples: {s}"),
            Error::NotUniserial(s) => write!(f, "module is not uniserial: {s}"),
            Error::InvalidLengths { index, reason } => {
                write!(f, "invalid sequence lengths at index {index}: {reason}")
            }
            Error::NoArSequence(s) => write!(f, "no AR sequence ends at a projective: {s}"),
            Error::NotIndecomposable(s) => write!(f, "module is not indecomposable: {s}"),
            Error::WrongProjectiveDimension { expected, found } => {
                write!(f, "projective dimension is {found}, expected {expected}")
            }
            Error::UntrustedDegree { degree, trusted } => write!(
                f,
                "degree {degree} is outside the trusted range (bound {trusted}); increase the resolution bound"
            ),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
            Error::Internal(s) => write!(f, "internal invariant violated: {s}"),
        }
    }
}

impl core::error::Error for Error {}
