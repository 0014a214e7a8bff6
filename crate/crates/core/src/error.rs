use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: left operand is {left_rows}x{left_cols}, right operand is {right_rows}x{right_cols}")]
    DimensionMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },

    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),

    #[error("side {side} is not divisible by block count {k}")]
    IndivisibleSide { side: usize, k: usize },

    #[error("{n} is not a power of {k}")]
    NotPowerOf { n: usize, k: usize },

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("invalid bilinear algorithm: {0}")]
    InvalidAlgorithm(String),

    #[error("parse error (line {line}): {message}")]
    Parse { line: usize, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("empty subset in triple collection")]
    EmptySubset,

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("simultaneous triple product property violated: {0}")]
    StppViolation(String),

    #[error("triple product property violated: {0}")]
    TppViolation(String),

    #[error("family cannot instantiate a plan for side {0}")]
    FamilyExhausted(usize),

    #[error("matrix is singular at recursion level {level}: {detail}")]
    Singular { level: usize, detail: String },

    #[error("rank deficiency detected during {step}")]
    RankDeficient { step: String },

    #[error("regime not supported by this operation: {0}")]
    UnsupportedRegime(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
