use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range (hypergraph has {n_vertices} vertices)")]
    InvalidVertex { vertex: usize, n_vertices: usize },

    #[error("edge id {0} is not an edge of the hypergraph")]
    UnknownEdge(usize),

    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("edge set is not balanced at vertex {0}")]
    Unbalanced(usize),

    #[error("binomial is zero (both sides cancel)")]
    ZeroBinomial,

    #[error("binomial is not in the toric ideal: its two sides have different vertex degrees")]
    NotInKernel,

    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fiber enumeration needs total degree up to {needed}, above the cap {cap}")]
    CapExceeded { needed: usize, cap: usize },

    #[error("result incomplete at degree cap {0}: some fiber needs a generator above the cap")]
    Incomplete(usize),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
