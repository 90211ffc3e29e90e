use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },
    #[error("ragged row {row}: expected {expected} values, found {found}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("empty input")]
    EmptyInput,
    #[error("invalid distance matrix: {0}")]
    InvalidMatrix(String),
    #[error("vertex {index} out of range for {n} points")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("empty set where a nonempty one is required")]
    EmptySet,
    #[error("{what} = {size} exceeds the configured cap of {cap}")]
    CapExceeded {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("filtration order violated: face {face:?} of simplex {simplex:?} appears later")]
    FaceOrder {
        simplex: Vec<usize>,
        face: Vec<usize>,
    },
    #[error("negative barcode endpoint {0}")]
    NegativeEndpoint(f64),
    #[error("cannot contract {u} and {v}: {reason}")]
    Contract {
        u: usize,
        v: usize,
        reason: &'static str,
    },
    #[error("growth exponent undefined: {0}")]
    GrowthUndefined(&'static str),
    #[error("malformed {format} line {line}: {message}")]
    Format {
        format: &'static str,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
