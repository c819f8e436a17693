use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element index {index} out of range for a group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("unknown element `{name}`; valid names: {valid}")]
    UnknownElement { name: String, valid: String },

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("no irreducible system available for {0}; use regular_rep")]
    NoIrreducibleSystem(String),

    #[error("walk error at step {step}: v{from} and v{to} are not adjacent")]
    Walk { step: usize, from: usize, to: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("numerical error: {0}")]
    Numerical(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
