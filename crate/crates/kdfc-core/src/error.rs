use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[non_exhaustive]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("vector is not in the row space")]
    NoSolution,

    #[error("division by the zero polynomial")]
    ZeroPolynomial,

    #[error("degree {degree} outside the supported range {min}..={max}")]
    DegreeOutOfRange { degree: usize, min: usize, max: usize },

    #[error("no factorization of 2^{degree}-1 available")]
    DegreeOutOfTable { degree: usize },

    #[error("matrix does not have the M-companion block structure")]
    NotMCompanion,

    #[error("invalid key length: {0} words (expected 4 or 8)")]
    InvalidKeyLength(usize),

    #[error("invalid IV length: {0} words (expected 4)")]
    InvalidIvLength(usize),

    #[error("{test}: needs at least {needed} bits, got {got}")]
    InsufficientData { test: &'static str, needed: usize, got: usize },

    #[error("{what} exceeds the size limit {limit}")]
    SizeGuard { what: &'static str, limit: usize },

    #[error("Y matrix lost full rank at iteration {iteration}")]
    RankLoss { iteration: usize },

    #[error("fill bits exhausted at iteration {iteration}")]
    FillExhausted { iteration: usize },

    #[error("no covering path within {stages} stages")]
    NoCover { stages: usize },

    #[error("zero state has no period")]
    ZeroState,

    #[error("state does not return to the seed within {steps} steps")]
    Aperiodic { steps: u64 },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("checksum mismatch: header {expected}, body {actual}")]
    Checksum { expected: String, actual: String },

    #[error("table entry of degree {degree} is not {what}")]
    BadTableEntry { degree: usize, what: &'static str },

    #[error("invalid hex: {0}")]
    Hex(String),
}
