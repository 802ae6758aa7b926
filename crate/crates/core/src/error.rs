use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("elements belong to different number fields")]
    FieldMismatch,

    #[error("division by zero")]
    DivisionByZero,

    /// Inversion found a non-constant common factor with the modulus, so the
    /// declared field is not a field.
    #[error("reducible modulus exposed: {factor} divides the modulus")]
    ReducibleModulus { factor: String },

    #[error("invalid modulus: {0}")]
    InvalidModulus(String),

    #[error("cannot parse {0:?}")]
    Parse(String),

    #[error("not in P_n: {0}")]
    NotInModuli(String),

    #[error("genus <= 1 unsupported: (k-1)(n-1) = {product} for (k, n) = ({k}, {n})")]
    GenusTooSmall { k: u32, n: usize, product: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("series has a nonzero constant term")]
    NonZeroConstant,

    #[error("no quotient below the classic Fermat curve")]
    NoQuotient,

    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),

    #[error("field too small; supply extension containing {}", missing.join(", "))]
    FieldTooSmall { missing: Vec<String> },

    #[error("generic mode unsupported here; use embedded mode")]
    GenericUnsupported,

    #[error("increase truncation: {unresolved} form(s) vanish to the truncation {truncation}")]
    TruncationExhausted { truncation: usize, unresolved: usize },

    #[error("degenerate family: {0}")]
    DegenerateFamily(String),

    #[error("generic-mode independence violated: {0}")]
    IndependenceViolated(String),

    #[error("Plücker closure failed: d_n = {0}")]
    PlueckerClosure(i64),

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    /// True for failures that indicate a bug or a violated mathematical
    /// invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::IndependenceViolated(_) | Error::PlueckerClosure(_) | Error::Internal(_)
        )
    }
}
