use thiserror::Error;

/// Errors raised anywhere in the library.
///
/// Mathematical "failures" that are really data (a hypothesis that does not
/// hold, a disagreement between methods) are reported in result structs, not
/// here.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("operands belong to different polynomial rings")]
    MixedRings,
    #[error("characteristic {0} is neither 0 nor a prime below 2^61")]
    NotPrime(u64),
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("variable index {index} out of range for {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },
    #[error("too many variables: {0} (at most {max})", max = crate::poly::MAX_VARS)]
    TooManyVariables(usize),
    #[error("quotient ring is infinite-dimensional")]
    InfiniteDimensional,
    #[error("ideal is the unit ideal")]
    UnitIdeal,
    #[error("minor size {k} exceeds matrix shape {rows}x{cols}")]
    KTooLarge { k: usize, rows: usize, cols: usize },
    #[error("critical locus is not zero-dimensional")]
    NonIsolatedCritical,
    #[error("brute-force scan over {size} points exceeds the limit {limit}")]
    FieldTooLarge { size: u128, limit: u64 },
    #[error("brute-force point scan needs a prime field")]
    RationalFieldUnsupported,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("complex is not graded: {0}")]
    NotGraded(String),
    #[error("hypotheses fail: {0}")]
    HypothesesFail(String),
    #[error("truncation degree {0} too small: strand still nonzero")]
    TruncationTooSmall(i64),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("variable name `{0}` is reserved")]
    ReservedVariable(String),
    #[error("{constraints} constraints need at least {} variables, got {variables}", constraints + 1)]
    TooManyConstraints { constraints: usize, variables: usize },
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
