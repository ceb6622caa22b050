use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex index {index} (complex has {count} vertices)")]
    InvalidVertexIndex { index: usize, count: usize },
    #[error("empty simplex set")]
    EmptyComplex,
    #[error("simplex {0:?} is empty or repeats a vertex")]
    DegenerateSimplex(Vec<usize>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("zero direction vector")]
    ZeroDirection,
    #[error("inconsistent grid shape: {0}")]
    GridShape(String),
    #[error("missing value for vertex {0}")]
    MissingVertexValue(usize),
    #[error("expected {expected} cell values, got {got}")]
    CellValueCount { expected: usize, got: usize },
    #[error("not constructible: cell {cell} has non-integer value {value}")]
    NotConstructible { cell: usize, value: String },
    #[error("support condition violated: {0}")]
    Support(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("oracle restricted to ≤ 3 dimensions (got {0})")]
    OracleDimension(usize),
    #[error("invalid query: {0}")]
    Query(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("malformed rational {0:?}")]
    Rational(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
