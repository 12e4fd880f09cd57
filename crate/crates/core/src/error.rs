use thiserror::Error;

/// Errors raised anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a supported prime (need p prime, p < 65536)")]
    InvalidPrime(u64),
    #[error("division by zero in F_{p}")]
    DivisionByZero { p: u32 },
    #[error("ring mismatch: {left} vs {right} variables")]
    RingMismatch { left: usize, right: usize },
    #[error("{q} is not a power of p = {p}")]
    NotAPowerOfP { q: u64, p: u32 },
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("order mismatch: {0}")]
    OrderMismatch(String),
    #[error("resource limit exceeded: {what} (basis size {basis_size})")]
    ResourceLimit { what: String, basis_size: usize },
    #[error("deadline exceeded after building {basis_size} basis elements")]
    DeadlineExceeded { basis_size: usize },
    #[error("quotient is not zero-dimensional (ideal not primary to the maximal ideal)")]
    NotZeroDimensional,
    #[error("too many variables for exhaustive dimension search: {0} > 16")]
    TooManyVariables(usize),
    #[error("insufficient samples: need {needed}, have {have}")]
    InsufficientSamples { needed: usize, have: usize },
    #[error("sample mismatch: {0}")]
    SampleMismatch(String),
    #[error("Macaulay matrix too large: {cells} cells exceeds cap {cap}")]
    MatrixTooLarge { cells: u64, cap: u64 },
    #[error("oracle disagrees at n = {n}: Groebner length {groebner}, oracle {oracle}")]
    OracleMismatch { n: u32, groebner: u64, oracle: u64 },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{0}")]
    Semantic(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidPrime(_) => "InvalidPrime",
            Error::DivisionByZero { .. } => "DivisionByZero",
            Error::RingMismatch { .. } => "RingMismatch",
            Error::NotAPowerOfP { .. } => "NotAPowerOfP",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::OrderMismatch(_) => "OrderMismatch",
            Error::ResourceLimit { .. } => "ResourceLimit",
            Error::DeadlineExceeded { .. } => "DeadlineExceeded",
            Error::NotZeroDimensional => "NotZeroDimensional",
            Error::TooManyVariables(_) => "TooManyVariables",
            Error::InsufficientSamples { .. } => "InsufficientSamples",
            Error::SampleMismatch(_) => "SampleMismatch",
            Error::MatrixTooLarge { .. } => "MatrixTooLarge",
            Error::OracleMismatch { .. } => "OracleMismatch",
            Error::Parse { .. } => "ParseError",
            Error::Semantic(_) => "SemanticError",
        }
    }
}
