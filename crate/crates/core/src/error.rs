use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("malformed fan: cones {first} and {second} do not meet in a common face")]
    MalformedFan { first: usize, second: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("polyhedron is unbounded")]
    Unbounded,

    #[error("polyhedron is empty")]
    Empty,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("fan reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("the anticanonical divisor is not Q-Cartier on cone {0:?}")]
    NotQGorenstein(Vec<usize>),

    #[error("polytope is not general: walls {walls:?} vanish together at lambda = {lambda}")]
    Generality { lambda: String, walls: Vec<Vec<usize>> },

    #[error("step budget of {0} exhausted")]
    StepBudget(usize),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
