use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid root system type {label}{rank}: {reason}")]
    InvalidType {
        label: String,
        rank: usize,
        reason: String,
    },
    #[error("simple reflection index {index} out of range 1..={rank}")]
    BadIndex { index: usize, rank: usize },
    #[error("invalid slope {k}/{m}: {reason}")]
    InvalidSlope { k: i64, m: i64, reason: String },
    #[error("element is not elliptic: 1 - w is singular")]
    NotElliptic,
    #[error("no certified elliptic regular element of order {m} found ({detail})")]
    NoEllipticRep { m: u32, detail: String },
    #[error("search budget of {budget} exhausted: {what}")]
    Budget { budget: usize, what: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
