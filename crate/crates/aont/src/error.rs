use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet needs at least two symbols, got {0}")]
    AlphabetTooSmall(usize),

    #[error("duplicate symbol {0:?} in alphabet")]
    DuplicateSymbol(String),

    #[error("symbol {0:?} is not a valid token (symbols are nonempty, contain no whitespace or '#', and are not the reserved tokens \"->\" and \":\")")]
    InvalidSymbol(String),

    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),

    #[error("symbol index {index} out of range for alphabet of size {size}")]
    SymbolIndexOutOfRange { index: usize, size: usize },

    #[error("tuple space {v}^{arity} exceeds the size bound of {bound} points")]
    SizeBoundExceeded { v: usize, arity: usize, bound: usize },

    #[error("rank {value} out of range for {arity}-tuples over {base} symbols")]
    RankOutOfRange { value: usize, arity: usize, base: usize },

    #[error("output tuple with rank {duplicate} occurs more than once; the array does not define a bijection")]
    NotABijection { duplicate: usize },

    #[error("expected {expected} rows, got {got}")]
    WrongRowCount { expected: usize, got: usize },

    #[error("input tuple with rank {rank} occurs more than once")]
    DuplicateInputTuple { rank: usize },

    #[error("marginal for position {position} is invalid: {reason}")]
    InvalidMarginal { position: usize, reason: String },

    #[error("invalid probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("column {column} out of range 1..={max}")]
    ColumnOutOfRange { column: usize, max: usize },

    #[error("duplicate column {0}")]
    DuplicateColumn(usize),

    #[error("column {column} is not an input column (inputs are 1..={s})")]
    NotAnInputColumn { column: usize, s: usize },

    #[error("column {column} is not an output column (outputs are {lo}..={hi})")]
    NotAnOutputColumn { column: usize, lo: usize, hi: usize },

    #[error("column subset is empty")]
    EmptySubset,

    #[error("column subset of size {len} exceeds s = {s}; the expected count would be fractional")]
    SubsetTooLarge { len: usize, s: usize },

    #[error("t = {t} out of range 1..={max}")]
    InvalidT { t: usize, max: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("conditioning event has probability zero")]
    ZeroConditioningEvent,

    #[error("not a probability distribution: {0}")]
    NotADistribution(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("designation is invalid: {0}")]
    InvalidDesignation(String),

    #[error("transform is not a ({t},{s},{v})-AONT under the combinatorial definition")]
    NotAnAont { t: usize, s: usize, v: usize },

    #[error("matrix is singular mod {0}")]
    SingularMatrix(usize),

    #[error("{0} is not prime")]
    NotPrime(usize),

    #[error("{}{message}", .line.map(|l| format!("line {l}: ")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        message: String,
    },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: Some(line),
            message: message.into(),
        }
    }

    pub(crate) fn parse_eof(message: impl Into<String>) -> Self {
        Error::Parse {
            line: None,
            message: message.into(),
        }
    }
}
