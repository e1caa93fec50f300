use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has no arcs")]
    EmptyGraph,

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("walk count overflow at node {node}, time {time}")]
    Overflow { node: usize, time: u32 },

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("graph too large for exhaustive enumeration: {0}")]
    TooLarge(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }
}
