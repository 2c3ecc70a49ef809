use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol `{0}` has no declared conjugate")]
    UndeclaredConjugate(String),

    #[error("symbol `{0}` is not declared")]
    UndeclaredSymbol(String),

    #[error("derivative {direction}({symbol}) exceeds derivation depth {limit}")]
    DepthExceeded {
        symbol: String,
        direction: String,
        limit: u32,
    },

    #[error("forms live over different coframes (n = {0} vs n = {1})")]
    CoframeMismatch(usize, usize),

    #[error("expected a homogeneous form: {0}")]
    NotHomogeneous(String),

    #[error("degree {degree} exceeds the half-dimension {n}")]
    DegreeTooHigh { degree: usize, n: usize },

    #[error("form is not primitive")]
    NotPrimitive,

    #[error(
        "operation requires constant structure coefficients; the spec contains function symbols"
    )]
    SymbolicCoefficients,

    #[error("spec is not almost Kähler: {0}")]
    NotAlmostKahler(String),

    #[error("bidegree ({p},{q}) out of range: {reason}")]
    BidegreeOutOfRange { p: usize, q: usize, reason: String },

    #[error("operation requires n = {expected}, spec has n = {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("form syntax error at byte {position}: {message}")]
    FormSyntax { position: usize, message: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error at line {line}, column {column}: {message}")]
    Schema {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("unknown spec `{0}`")]
    UnknownSpec(String),
}
