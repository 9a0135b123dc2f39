use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what}: {n} points exceeds the brute-force cap of {cap}; use the heuristic instead")]
    CapExceeded { what: &'static str, n: usize, cap: usize },

    #[error("no intersection: line is parallel to the hyperplane")]
    NoIntersection,

    #[error("sets are not separable: their convex hulls intersect")]
    NotSeparable,

    #[error("search failed: {0}")]
    NotFound(String),

    #[error("internal verification failed: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
