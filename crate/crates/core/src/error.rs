use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),

    #[error("unknown vertex id `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge `{0}`")]
    UnknownEdge(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("graph too large for exhaustive enumeration: {what} = {found} exceeds {limit}")]
    TooLarge {
        what: &'static str,
        found: usize,
        limit: usize,
    },

    #[error("orientation does not cover edge `{0}`")]
    IncompleteOrientation(String),

    #[error("graph is not stable at vertex `{0}`")]
    Unstable(String),

    #[error("2g - 2 + n must be positive (g = {genus}, n = {legs})")]
    UnstableType { genus: u32, legs: u32 },

    #[error("genus/leg mismatch: ({0}, {1}) vs ({2}, {3})")]
    TypeMismatch(u32, u32, u32, u32),

    #[error("edge `{0}` has infinite length")]
    InfiniteLength(String),

    #[error("edge `{edge}` has invalid length {length}")]
    InvalidLength { edge: String, length: String },

    #[error("edge `{0}` has no length")]
    MissingLength(String),

    #[error("malformed input at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
