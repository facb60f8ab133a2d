use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("symbol `{0}` has no value in this specialization")]
    MissingSymbol(String),
    #[error("bad specialization: {0}")]
    BadSpecialization(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("gauge matrix is singular or not diagonal")]
    SingularGauge,
    #[error("operands use different generator alphabets")]
    AlphabetMismatch,
    #[error("degree bound {bound} is below the required degree {needed}")]
    BoundTooSmall { needed: usize, bound: usize },
    #[error("problem too large: {words} words exceeds the cap of {cap}")]
    TooLarge { words: u128, cap: u128 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("evaluation ranks did not stabilize: {0}")]
    SamplingUnstable(String),
    #[error("eigenvalues coincide; the orbit is degenerate")]
    DegenerateOrbit,
    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
