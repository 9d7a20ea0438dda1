use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} is out of range for a graph on {order} vertices")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("invalid input: {0}")]
    Input(String),

    /// A size gate was exceeded (explicit complexes, exhaustive searches).
    #[error("{what}: size {size} exceeds the limit of {limit}")]
    Capacity {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    /// Some recursion stage has no simplicial vertex to eliminate.
    #[error("unsupported graph: no simplicial vertex in the induced subgraph on {vertices:?}")]
    Unsupported { vertices: Vec<usize> },

    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    /// Process exit code for front ends: 1 verification failure, 2 bad
    /// input or size gate, 3 unsupported graph.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Verification(_) => 1,
            Error::VertexOutOfRange { .. } | Error::Input(_) | Error::Capacity { .. } => 2,
            Error::Unsupported { .. } => 3,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
