use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::Rational;

/// Errors raised by precondition violations.
///
/// Diagnostic operations (validation, verification reports) do not error;
/// they return reports. An `Error` always means the input broke a contract.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vector's length does not match the expected ambient dimension.
    DimensionMismatch {
        expected: usize,
        found: usize,
        /// Index of the offending vector in the input sequence, if any.
        index: Option<usize>,
    },
    /// Two subspaces or matrices live in different ambient dimensions.
    AmbientMismatch { left: usize, right: usize },
    /// Matrix shapes are incompatible for the requested operation.
    ShapeMismatch { context: &'static str },
    /// Element coordinates do not match the algebra's dimension.
    ElementMismatch { algebra_dim: usize, coords_len: usize },
    /// The operation requires a unital algebra.
    NotUnital,
    /// A polynomial quotient modulus must be monic of degree >= 1.
    NotMonic,
    /// The subspace passed as an ideal is not one; carries a witness
    /// product that leaves the subspace.
    NotAnIdeal { witness: Vec<Rational> },
    /// Input polynomial does not vanish on the diagonal; carries the
    /// nonzero restriction p(x,x).
    NotDiagonalVanishing { restriction: String },
    /// The tensor element is outside N_Lie, so no certificate exists.
    NotInNlie,
    /// Polynomial uses variables outside the declared convention.
    UnknownVariable { name: String },
    /// Mismatched generator alphabets in free-algebra arithmetic.
    AlphabetMismatch,
    /// Certificate node cannot be evaluated in the given context.
    BadCertificate { reason: &'static str },
    /// Group-average size guard tripped.
    GroupTooLarge { n: usize, max: usize },
    /// Exact division failed (nonzero remainder).
    InexactDivision,
    /// A classifier's canonical decomposition failed to reproduce the
    /// closure; carries the escaping element. Indicates a bug, not a data
    /// condition.
    ClassificationFailed { witness: Vec<Rational> },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found, index: Some(i) } => {
                write!(f, "vector {i} has length {found}, expected {expected}")
            }
            Error::DimensionMismatch { expected, found, index: None } => {
                write!(f, "vector has length {found}, expected {expected}")
            }
            Error::AmbientMismatch { left, right } => {
                write!(f, "ambient dimensions differ: {left} vs {right}")
            }
            Error::ShapeMismatch { context } => write!(f, "shape mismatch in {context}"),
            Error::ElementMismatch { algebra_dim, coords_len } => {
                write!(f, "element has {coords_len} coordinates, algebra has dimension {algebra_dim}")
            }
            Error::NotUnital => write!(f, "algebra must be unital"),
            Error::NotMonic => write!(f, "modulus must be monic of degree >= 1"),
            Error::NotAnIdeal { .. } => write!(f, "subspace is not a two-sided ideal"),
            Error::NotDiagonalVanishing { restriction } => {
                write!(f, "polynomial does not vanish on the diagonal: p(x,x) = {restriction}")
            }
            Error::NotInNlie => write!(f, "element does not satisfy the N_Lie conditions"),
            Error::UnknownVariable { name } => write!(f, "variable `{name}` is outside the declared convention"),
            Error::AlphabetMismatch => write!(f, "free-algebra operands use different alphabets"),
            Error::BadCertificate { reason } => write!(f, "ill-formed certificate: {reason}"),
            Error::GroupTooLarge { n, max } => {
                write!(f, "signed permutation group of degree {n} exceeds the guard (max {max})")
            }
            Error::InexactDivision => write!(f, "division left a nonzero remainder"),
            Error::ClassificationFailed { .. } => {
                write!(f, "internal error: closure does not match its canonical decomposition")
            }
        }
    }
}

impl core::error::Error for Error {}
