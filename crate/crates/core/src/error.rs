use thiserror::Error;

/// Errors shared across the library.
///
/// Verdicts (free / not free / conjecture fails) are never errors; errors are
/// reserved for violated preconditions, malformed input and exhausted budgets.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("zero polynomial has no root data")]
    ZeroPolynomial,

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("zero normal vector{}", match .line { Some(l) => format!(" at line {l}"), None => String::new() })]
    ZeroNormal { line: Option<usize> },

    #[error("duplicate hyperplane{}: {hyperplane}", match .line { Some(l) => format!(" at line {l}"), None => String::new() })]
    DuplicateHyperplane { line: Option<usize>, hyperplane: String },

    #[error("parse error{}: {message}", match .line { Some(l) => format!(" at line {l}"), None => String::new() })]
    Parse { line: Option<usize>, message: String },

    #[error("hyperplane index {index} out of range (arrangement has {len} hyperplanes)")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("arrangement is not central: {0}")]
    NotCentral(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("vector field is not a member: {0}")]
    NotMember(String),

    #[error("unsupported root system: {0}")]
    UnsupportedRootSystem(String),

    #[error("parameters outside conjecture domain: {0}")]
    ParameterDomain(String),

    #[error("resource budget exceeded: {what} (needed {needed}, budget {budget})")]
    Budget {
        what: String,
        needed: String,
        budget: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
