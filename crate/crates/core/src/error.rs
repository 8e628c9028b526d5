use thiserror::Error;

/// Errors raised by the arithmetic, series and eigenform routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero divisor")]
    ZeroDivisor,
    #[error("not prime: {0} (only prime q = p is supported)")]
    NotPrime(u64),
    #[error("degree overflow: degree {degree} exceeds bound {bound}")]
    DegreeOverflow { degree: u64, bound: u64 },
    #[error("insufficient precision: need {needed}, have {available}")]
    InsufficientPrecision { needed: u64, available: u64 },
    #[error("not a unit: constant term is zero")]
    NotAUnit,
    #[error("zero argument")]
    ZeroArgument,
    #[error("monic required")]
    MonicRequired,
    #[error("weight mismatch: operator weight {operator}, form weight {form}")]
    WeightMismatch { operator: u32, form: u32 },
    #[error("graded inconsistency: {0}")]
    GradedInconsistency(String),
    #[error("unsupported prime degree {0}: only degree-one primes are implemented")]
    UnsupportedPrimeDegree(usize),
    #[error("length exceeds q-1: length {len}, q = {q}")]
    LengthExceedsQMinus1 { len: usize, q: u32 },
    #[error("factorial vanishes mod p: {len}! with p = {p}")]
    FactorialVanishes { len: usize, p: u32 },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("field mismatch: p = {0} vs p = {1}")]
    FieldMismatch(u32, u32),
    #[error("not double-cuspidal: {0}")]
    NotDoubleCuspidal(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("missing entry: {0}")]
    MissingEntry(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}
