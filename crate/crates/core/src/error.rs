use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// The instance is larger than the exhaustive routine that was asked to handle it.
    #[error("capacity exceeded for {what}: n = {n}, supported maximum is {max}")]
    Capacity { what: &'static str, n: usize, max: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A numeric argument lies outside the region where the formula is stated.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("near-orthogonality hypothesis violated by states ({i}, {j}): |<phi_i|phi_j>| = {magnitude} > {bound}")]
    Hypothesis {
        i: usize,
        j: usize,
        magnitude: f64,
        bound: f64,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("construction failed: {0}")]
    Construction(String),

    /// Something that the mathematics rules out happened anyway.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
