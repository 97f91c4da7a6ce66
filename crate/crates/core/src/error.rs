use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid hypergraph: {0}")]
    InvalidGraph(String),

    #[error("invalid partitioning: {0}")]
    InvalidPartitioning(String),

    #[error("invalid placement: {0}")]
    InvalidPlacement(String),

    #[error("invalid hardware configuration: {0}")]
    InvalidHardware(String),

    #[error("invalid node order: {0}")]
    InvalidOrder(String),

    #[error("node {node} cannot fit an empty core: {reason}")]
    UnsatisfiableNode { node: usize, reason: String },

    #[error("{partitions} partitions exceed the {cores} available cores")]
    CapacityExceeded { partitions: usize, cores: usize },

    #[error("partition {0} has no placement")]
    Unplaced(usize),

    #[error("eigensolver did not converge within {matvecs} matrix-vector products")]
    SolverFailed { matvecs: usize },

    #[error("{0}")]
    Undefined(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
