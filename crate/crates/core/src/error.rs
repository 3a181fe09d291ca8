use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("edge {0}: self loop at `{1}`")]
    SelfLoop(usize, String),
    #[error("edge {0}: `{1}`-`{2}` listed twice")]
    DuplicateEdge(usize, String, String),
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("not negative definite: leading minor of order {order} of -A is {minor}")]
    NotNegativeDefinite { order: usize, minor: String },
    #[error("vertex `{0}` has euler number {1}; at most -1 is accepted")]
    EulerTooLarge(String, i64),
    #[error("vertex `{0}` carries genus {1}; only rational curves are supported")]
    Genus(String, i64),
    #[error("graph has no vertices")]
    Empty,
    #[error("cycle has {got} coefficients, graph has {expected} vertices")]
    MismatchedGraph { expected: usize, got: usize },
    #[error("operation needs a minimal resolution, but `{0}` has euler number {1}")]
    NotMinimal(String, i64),
    #[error("graph is not elliptic ({0})")]
    NotElliptic(String),
    #[error("graph is not numerically Gorenstein")]
    NotNumericallyGorenstein,
    #[error("{0}")]
    OutOfRange(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Usage(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("resource cap: {0}")]
    ResourceCap(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Invariant(_) | Error::Internal(_) => 2,
            Error::ResourceCap(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
