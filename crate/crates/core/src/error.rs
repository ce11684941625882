use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("vertex {vertex} is outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("simplicial complex is not flag")]
    NotFlag,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("chain is not a cycle")]
    NotCycle,
    #[error("element is not a cocycle")]
    NotCocycle,
    #[error("class does not lie in the span of the given basis")]
    OutsideSpan,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("element is not homogeneous")]
    Inhomogeneous,
}

pub type Result<T> = std::result::Result<T, Error>;
