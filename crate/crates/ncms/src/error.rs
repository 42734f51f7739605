use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("time grids differ between operands")]
    GridMismatch,

    #[error("interval {found} is not contained in {bound}")]
    DomainNotContained { found: String, bound: String },

    #[error("invalid grid interval: {0}")]
    InvalidInterval(String),

    #[error("domains are not adjacent at a shared junction index")]
    NonAdjacentDomains,

    #[error("junction index {index} is not a sample of both operands")]
    JunctionNotIncluded { index: i64 },

    #[error("values disagree at junction index {index}")]
    JunctionMismatch { index: i64 },

    #[error("state space mismatch: {0}")]
    StateSpaceMismatch(String),

    #[error("argument out of range: {0}")]
    InvalidArgument(String),

    #[error("not a class-K function: {0}")]
    InvalidClassK(String),

    #[error("trajectory set violates an axiom: {0}")]
    AxiomViolation(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("not a sub-system: {0}")]
    NotSubSystem(String),

    #[error("materialization cap of {limit} exceeded")]
    CapExceeded { limit: usize },

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("evaluation error: {0}")]
    Eval(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
