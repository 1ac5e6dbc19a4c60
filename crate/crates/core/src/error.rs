use thiserror::Error;

use crate::poly::{ExponentVector, Family};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable family mismatch: {0} vs {1}")]
    FamilyMismatch(Family, Family),

    #[error("polynomial is not bihomogeneous: terms {first:?} and {second:?} differ in {what}")]
    Inhomogeneous {
        what: &'static str,
        first: ExponentVector,
        second: ExponentVector,
    },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("partition has {parts} parts but only {vars} variables")]
    TooManyParts { parts: usize, vars: usize },

    #[error("polynomials in the list have different bidegrees")]
    MixedBidegree,

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("parse error: {0}")]
    Parse(String),

    /// Signals a broken internal invariant, never bad input.
    #[error("internal error: {0}")]
    Internal(String),
}
