use alloc::string::String;
use core::fmt;

use crate::operators::LaplacianViolation;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vector or matrix entry is NaN or infinite.
    NonFinite { what: &'static str },
    /// A vector must have at least one entry.
    EmptyVector,
    /// Operands have incompatible dimensions.
    DimensionMismatch { expected: usize, got: usize },
    /// The dimension is too small for the requested construction.
    DegenerateDimension { n: usize, min: usize },
    /// A p-norm exponent below 1 (or NaN).
    BadExponent { p: f64 },
    /// Ky Fan index outside `1..=n`.
    KyFanOutOfRange { k: usize, n: usize },
    /// Extreme-point enumeration would exceed the configured cap.
    EnumerationCapExceeded { required: u128, cap: u64 },
    /// The vector lies outside the dual-ball the decomposition expects.
    NotInDualBall { dual_norm: f64 },
    /// The norm spec does not support the requested operation.
    UnsupportedSpec { spec: String, op: &'static str },
    /// Randomized routines need at least one trial.
    ZeroTrials,
    /// A probability weight is negative or (where positivity is required) zero.
    BadWeight { index: usize, weight: f64 },
    /// Probability weights do not sum to 1 within the accepted tolerance.
    WeightSum { sum: f64 },
    /// A matrix failed Laplacian validation.
    Laplacian(LaplacianViolation),
    /// An entry is too close to zero for a well-conditioned reciprocal.
    NearZeroEntry {
        index: usize,
        value: f64,
        min_abs: f64,
    },
    /// A nonnegative input carries a negative entry.
    NegativeEntry { index: usize, value: f64 },
    /// Unknown reproduction case or search target name.
    UnknownCase { name: String },
    /// Text that does not parse as a norm spec or exponent.
    Parse { input: String },
    /// A quadratic form came out far below zero; this signals a bug, not roundoff.
    IndefiniteInner { value: f64 },
    /// An iterative routine failed to make progress.
    IterationLimit { op: &'static str },
    /// An input violated a stated precondition.
    Precondition { what: &'static str },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { what } => write!(f, "{what} contains a NaN or infinite entry"),
            Error::EmptyVector => write!(f, "vector must have at least one entry"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::DegenerateDimension { n, min } => {
                write!(f, "dimension {n} is below the minimum {min}")
            }
            Error::BadExponent { p } => write!(f, "p-norm exponent must be >= 1, got {p}"),
            Error::KyFanOutOfRange { k, n } => {
                write!(f, "Ky Fan index k={k} outside 1..={n}")
            }
            Error::EnumerationCapExceeded { required, cap } => {
                write!(
                    f,
                    "enumeration of {required} extreme points exceeds cap {cap}"
                )
            }
            Error::NotInDualBall { dual_norm } => {
                write!(
                    f,
                    "vector has dual norm {dual_norm} > 1, outside the dual ball"
                )
            }
            Error::UnsupportedSpec { spec, op } => {
                write!(f, "norm spec {spec} is not supported by {op}")
            }
            Error::ZeroTrials => write!(f, "trial count must be at least 1"),
            Error::BadWeight { index, weight } => {
                write!(f, "weight {weight} at index {index} is not admissible")
            }
            Error::WeightSum { sum } => {
                write!(f, "weights sum to {sum}, expected 1")
            }
            Error::Laplacian(v) => write!(f, "not a Laplacian: {v}"),
            Error::NearZeroEntry {
                index,
                value,
                min_abs,
            } => {
                write!(
                    f,
                    "entry {value} at index {index} has modulus below {min_abs}"
                )
            }
            Error::NegativeEntry { index, value } => {
                write!(f, "entry {value} at index {index} is negative")
            }
            Error::UnknownCase { name } => write!(f, "unknown case or target: {name}"),
            Error::Parse { input } => write!(f, "cannot parse `{input}`"),
            Error::IndefiniteInner { value } => {
                write!(f, "quadratic form evaluated to {value}, far below zero")
            }
            Error::IterationLimit { op } => write!(f, "{op} failed to converge"),
            Error::Precondition { what } => write!(f, "precondition violated: {what}"),
        }
    }
}

impl core::error::Error for Error {}
