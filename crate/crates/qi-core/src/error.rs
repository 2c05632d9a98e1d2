//! Crate-wide error type.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two scalars from different fields met in one operation.
    FieldMismatch,
    /// Matrix/vector shapes do not line up for the requested operation.
    ShapeMismatch(String),
    /// A group element or divisor was singular/zero where invertibility is required.
    Singular,
    /// Input violates a structural precondition (bad index, bad weight length, ...).
    Invalid(String),
    /// A Laurent character failed to decompose with nonnegative multiplicities.
    NotAGoodCharacter(String),
    /// The quiver has an oriented cycle where acyclicity is required.
    OrientedCycle,
    /// An evaluator claimed homogeneous of degree d but is not.
    NonHomogeneous { expected: usize },
    /// A configured size cap would be exceeded; refusing rather than approximating.
    ResourceCap(String),
    /// A denominator was not invertible modulo every prime in the fallback table.
    PrimeExhausted,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::FieldMismatch => write!(f, "operands belong to different fields"),
            Error::ShapeMismatch(s) => write!(f, "shape mismatch: {s}"),
            Error::Singular => write!(f, "singular matrix where an invertible one is required"),
            Error::Invalid(s) => write!(f, "invalid input: {s}"),
            Error::NotAGoodCharacter(s) => {
                write!(f, "negative multiplicity in Schur decomposition: {s}")
            }
            Error::OrientedCycle => write!(f, "quiver has an oriented cycle; path counts diverge"),
            Error::NonHomogeneous { expected } => {
                write!(f, "evaluator is not homogeneous of degree {expected}")
            }
            Error::ResourceCap(s) => write!(f, "resource cap exceeded: {s}"),
            Error::PrimeExhausted => write!(f, "no prime in the table avoids the denominators"),
        }
    }
}

#[cfg(test)]
impl std::error::Error for Error {}
