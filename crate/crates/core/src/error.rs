use thiserror::Error;

use crate::randlabel::TypeCensus;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a hypergraph or graph needs at least one vertex")]
    NoVertices,

    #[error("edge {edge} is empty")]
    EmptyEdge { edge: usize },

    #[error("edge {edge} contains vertex {vertex}, outside [0, {vertex_count})")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("edge {edge} lists vertex {vertex} more than once")]
    RepeatedVertex { edge: usize, vertex: usize },

    #[error("edges {first} and {second} are equal as sets")]
    DuplicateEdge { first: usize, second: usize },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("labeling has {got} values but the structure has {expected} vertices")]
    Dimension { expected: usize, got: usize },

    #[error("labels must be positive (vertex {vertex} has label 0)")]
    ZeroLabel { vertex: usize },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("dual is degenerate: vertices {first} and {second} lie in exactly the same edges")]
    DualDegenerate { first: usize, second: usize },

    #[error("vertex {vertex} is isolated, its open neighborhood is empty")]
    EmptyNeighborhood { vertex: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("not a tree: {0}")]
    NotATree(String),

    #[error("search budget of {budget} nodes exhausted: optimum lies in [{lower}, {upper}]")]
    SearchBudget { budget: u64, lower: u64, upper: u64 },

    #[error("retry budget exhausted after {attempts} attempts")]
    RetryBudget {
        attempts: u64,
        census: Option<Box<TypeCensus>>,
    },

    #[error("enumeration of {size} labelings exceeds the oracle limit")]
    OracleTooLarge { size: f64 },

    #[error("too large: {0}")]
    TooLarge(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("parameters out of range: {0}")]
    ParamsOutOfRange(String),

    #[error("infeasible parameters: {0}")]
    InfeasibleParams(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: {source}")]
    Validation {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Whether the error reports an infeasible or exhausted instance rather
    /// than malformed input.
    pub fn is_infeasibility(&self) -> bool {
        matches!(
            self,
            Error::DualDegenerate { .. }
                | Error::EmptyNeighborhood { .. }
                | Error::SearchBudget { .. }
                | Error::RetryBudget { .. }
                | Error::OracleTooLarge { .. }
                | Error::TooLarge(_)
                | Error::ParamsOutOfRange(_)
                | Error::InfeasibleParams(_)
                | Error::NotATree(_)
                | Error::Shape(_)
        )
    }
}
