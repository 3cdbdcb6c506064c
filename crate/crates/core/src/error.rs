use thiserror::Error;

/// Coarse classification used by the command-line front end to pick an
/// exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// Malformed or hypothesis-violating input.
    InvalidInput,
    /// A configured cap, iteration budget, or contour safeguard was hit.
    Resource,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("value {0} does not fit in binary64")]
    FloatOverflow(String),

    #[error("non-finite float in {0}")]
    NonFinite(&'static str),

    #[error("operation `{0}` is undefined for the zero polynomial")]
    ZeroPolynomial(&'static str),

    #[error("polynomial backends differ (exact vs float)")]
    BackendMismatch,

    #[error("{0} requires the exact backend")]
    RequiresExact(&'static str),

    #[error("polynomial is not squarefree; divide by gcd(p, p') before counting")]
    NotSquarefree,

    #[error("empty interval: lower bound must be strictly below upper bound")]
    EmptyInterval,

    #[error("degree gap {0} exceeds 1")]
    DegreeGap(usize),

    #[error("pair does not interlace: {0}")]
    NotInterlacing(String),

    #[error("Wronskian p*q' - p'*q is negative; swap p and q or negate q")]
    WrongWronskianSign,

    #[error("degenerate Hermite-Biehler input: {0}")]
    Degenerate(String),

    #[error("exponential slope alpha = {0} is transcendental in exact mode; use float mode")]
    NonzeroAlphaInExactMode(String),

    #[error("n = {n} exceeds the configured cap {cap} (cost grows as 2^n)")]
    CapExceeded { n: usize, cap: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("coupling A[{i}][{j}] = {value} violates -1 < A_ij < 1")]
    CouplingOutOfRange { i: usize, j: usize, value: String },

    #[error("coupling matrix is not symmetric at ({i}, {j})")]
    CouplingNotSymmetric { i: usize, j: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("root finder did not converge")]
    NotConverged,

    #[error("a zero lies within {margin} of the contour near {re} + {im}i; perturb the box")]
    ZeroNearContour { re: f64, im: f64, margin: f64 },

    #[error("contour subdivision limit exceeded")]
    SubdivisionLimit,

    #[error("the function is identically zero")]
    ZeroFunction,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::CapExceeded { .. }
            | Error::NotConverged
            | Error::ZeroNearContour { .. }
            | Error::SubdivisionLimit => ErrorClass::Resource,
            _ => ErrorClass::InvalidInput,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
