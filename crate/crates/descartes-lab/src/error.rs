//! Crate-wide error taxonomy.
//!
//! Every fallible operation returns [`Error`]; the variants mirror the
//! preconditions of the public API (zero polynomials, enumeration caps,
//! exactness requirements, degenerate inputs) plus the two runtime failure
//! modes (uncertified quadrature, internal subdivision limits).

use thiserror::Error;

/// Result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All error conditions the library reports.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Root-counting operation received the identically-zero polynomial.
    #[error("zero polynomial: root counting is undefined for the identically-zero polynomial")]
    ZeroPolynomial,

    /// Exhaustive enumeration requested above the configured cap.
    #[error("size {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },

    /// An exact-equality event was given data that is not exact.
    #[error("exact-arithmetic data required: {0}")]
    ExactnessRequired(&'static str),

    /// Weight normalization received a constant vector (zero variance).
    #[error("all entries equal: normalization would divide by zero")]
    AllEqual,

    /// Input sequence shorter than the operation's minimum length.
    #[error("input length {len} below minimum {min}")]
    LengthTooSmall { len: usize, min: usize },

    /// Two inputs that must have equal lengths do not.
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// Closed-form density expansion requested above the term cap.
    #[error("{n} weights would need 2^{n} expansion terms (cap {cap})")]
    TooManyTerms { n: usize, cap: usize },

    /// Weighted-uniform density requested with a zero weight.
    #[error("zero weight at index {0}: the weighted-uniform density requires nonzero weights")]
    ZeroWeight(usize),

    /// A bound or normalization was asked of an all-zero sequence.
    #[error("all entries are zero")]
    AllZero,

    /// Simplex functional evaluated at a point with tied coordinates.
    #[error("tied coordinates at indices {0} and {1}")]
    TiedCoordinates(usize, usize),

    /// Quadrature could not certify the requested tolerance.
    #[error("quadrature failed to certify tolerance {tol:e}: {reason}")]
    QuadratureFailure { tol: f64, reason: &'static str },

    /// A parameter violated a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Configuration file or CLI override could not be interpreted.
    #[error("config error: {0}")]
    Config(String),

    /// An internal subdivision or iteration limit was exceeded.
    ///
    /// This is a defect indicator, not an input error: the escalation ladder
    /// of the root counter is designed so this never fires on valid input.
    #[error("internal limit exceeded: {0}")]
    InternalLimit(&'static str),

    /// Writing results to disk failed.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
