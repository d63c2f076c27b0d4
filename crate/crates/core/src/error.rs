use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("vertex id {id} out of range 1..={n}")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("vertex {vertex} has weight {weight}; weights must be >= 1")]
    InvalidWeight { vertex: usize, weight: u64 },

    #[error("graph is not bipartite; odd cycle {0:?}")]
    NonBipartite(Vec<usize>),

    #[error("labeling does not properly 2-color the graph")]
    InvalidLabeling,

    #[error("graph is not acyclic")]
    NotAForest,

    #[error("solver requires unit vertex weights")]
    WeightedInput,

    #[error("target t = {t} exceeds edge count m = {m}")]
    Infeasible { t: usize, m: usize },

    #[error("instance has {n} vertices; enumeration limit is {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("vertex set {0:?} is not a clique of the source graph")]
    NotAClique(Vec<usize>),

    #[error("coverage profile looks non-concave: {0}")]
    MncViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
