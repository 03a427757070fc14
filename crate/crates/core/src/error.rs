use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("empty graph")]
    Empty,
    #[error("graphs must have the same vertex count ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),
    #[error("invalid algorithm specification: {0}")]
    InvalidSpec(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("rational arithmetic exceeded {0} bits")]
    Overflow(u64),
    #[error("invalid base graph: {0}")]
    InvalidBase(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("no separating base found within budget")]
    SearchExhausted,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
