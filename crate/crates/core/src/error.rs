use thiserror::Error;

/// Errors reported by the library.
///
/// Input errors describe bad data handed in by the caller. `Internal`
/// signals a broken invariant inside a solver or rewrite and always
/// indicates a bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge ({u}, {v}): endpoint out of range for {n} vertices")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({v}, {v}): self-loop")]
    SelfLoop { v: usize },
    #[error("edge ({u}, {v}): duplicate edge")]
    DuplicateEdge { u: usize, v: usize },
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is not connected")]
    Disconnected,
    #[error("not a tree")]
    NotATree,
    #[error("graph is not 3-regular: vertex {vertex} has degree {degree}")]
    NotCubic { vertex: usize, degree: usize },
    #[error("graph order {0} is odd")]
    OddOrder(usize),
    #[error("graph has {n} vertices, over the limit of {limit}")]
    OverLimit { n: usize, limit: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("broadcast has {got} values but the graph has {expected} vertices")]
    LengthMismatch { got: usize, expected: usize },
    #[error("not an independent broadcast: {0}")]
    InvalidBroadcast(String),
    #[error("envelope list is empty")]
    EmptyEnvelopeList,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
