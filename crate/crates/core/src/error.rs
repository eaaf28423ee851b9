use thiserror::Error;

/// Errors raised by the graph, pattern, engine and experiment layers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("unsupported pattern: {0}")]
    UnsupportedPattern(String),
    #[error("edge {0} is not in the closure")]
    NotInfected(String),
    #[error("edge {0} is a seed edge; its witness is trivial")]
    TrivialWitness(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
