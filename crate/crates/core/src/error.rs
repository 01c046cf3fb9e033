use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("node index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("duplicate hyperedge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("hyperedge has {size} distinct nodes, at least 2 required")]
    EdgeTooSmall { size: usize },

    #[error("weight {0} outside the allowed range")]
    BadWeight(f64),

    #[error("weight {0} is not positive")]
    NonPositiveWeight(f64),

    #[error("feature dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("row count mismatch: expected {expected}, got {got}")]
    RowCountMismatch { expected: usize, got: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("feature matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("non-finite feature value at row {row}, column {col}")]
    NonFinite { row: usize, col: usize },

    #[error("hypergraph must have at least one node")]
    NoNodes,

    #[error("hypergraph has no hyperedges")]
    EmptyHypergraph,

    #[error("node counts differ: {left} vs {right}")]
    NodeCountMismatch { left: usize, right: usize },

    #[error("cholesky factorisation failed; precision matrix is not positive definite")]
    FactorizationFailure,

    #[error("sigma must be positive and finite, got {0}")]
    BadSigma(f64),

    #[error("hyperedge size {size} exceeds node count {n}")]
    SizeTooLarge { size: usize, n: usize },

    #[error("hyperedge size {0} is below the minimum of 2")]
    SizeTooSmall(usize),

    #[error("negative smoothness score {0}")]
    NegativeScore(f64),

    #[error("requested {requested} hyperedges of size {size:?} but only {available} candidates exist")]
    NotEnoughCandidates {
        size: Option<usize>,
        requested: usize,
        available: usize,
    },

    #[error("invalid selection: {0}")]
    BadSelection(String),

    #[error("candidate set has not been scored")]
    MissingScores,

    #[error("candidate set has no probabilities")]
    MissingProbabilities,

    #[error("expected a {expected} smoothness vector")]
    WrongSmoothnessKind { expected: &'static str },

    #[error("rho {0} outside [0, 1]")]
    BadRho(f64),

    #[error("rho given for size {0} which has no candidate count")]
    UnknownSize(usize),

    #[error("infeasible configuration: {0}")]
    InfeasibleConfig(String),
}
