use crate::graph::Edge;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("eigensolver did not converge (residual {residual:e} after {sweeps} sweeps)")]
    NoConvergence { residual: f64, sweeps: usize },
    #[error("index {index} out of range 1..={len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Edge),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph too small: need at least {needed} vertices, have {have}")]
    TooSmall { needed: usize, have: usize },
    #[error("graph too large: limit {limit} vertices, have {have}")]
    TooLarge { limit: usize, have: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("negative weight {weight} on edge {edge:?}")]
    NegativeWeight { edge: Edge, weight: f64 },
    #[error("matrix weight on edge {edge:?} is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NonPsdWeight { edge: Edge, min_eigenvalue: f64 },
    #[error("weight given for non-edge {0:?}")]
    UnknownEdge(Edge),
    #[error("expected {expected} edges, got {got}")]
    WrongEdgeCount { expected: usize, got: usize },

    #[error("zero vector has no normalisation")]
    ZeroVector,
    #[error("norm is not smooth at the given point")]
    NotSmooth,
    #[error("invalid normed space: {0}")]
    InvalidSpace(String),
    #[error("matrix is singular")]
    Singular,
    #[error("not an isometry: |‖Ψx‖ - ‖x‖| = {deviation:e} at x = {witness:?}")]
    NotIsometry { witness: Vec<f64>, deviation: f64 },

    #[error("edge {0:?} has coincident endpoints")]
    CoincidentEndpoints(Edge),
    #[error("norm is not smooth in the direction of edge {0:?}")]
    NonSmoothEdge(Edge),
    #[error("no valid placement found in {attempts} attempts")]
    Unsatisfiable { attempts: usize },
    #[error("tie between facets on edge {0:?}")]
    TieOnEdge(Edge),
    #[error("search budget exceeded after {visited} nodes")]
    BudgetExceeded { visited: u64 },
    #[error("operation requires an ℓ∞ or polyhedral space")]
    NotPolyhedral,

    #[error("bound hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("kernel mismatch: ‖M z_{index}‖ = {residual:e}")]
    KernelMismatch { index: usize, residual: f64 },
    #[error("graph has {edges} edges, more than d·n = {limit}")]
    TooDense { edges: usize, limit: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
