use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed graph input or out-of-range vertex/edge references.
    #[error("input error: {0}")]
    Input(String),

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    /// The graph violates a standing assumption of a formula (degree-1
    /// vertices, irregularity where regularity is required, ...).
    #[error("formula assumption violated: {0}")]
    Assumption(String),

    /// The geodesic operator recursion only holds on simple graphs.
    #[error("graph is not simple: {0}")]
    NonSimple(String),

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("constant term is singular")]
    SingularConstant,

    #[error("constant term must be {expected}")]
    BadConstantTerm { expected: &'static str },

    #[error("half-edge {edge} is not incident to vertex {vertex}")]
    NotIncident { vertex: usize, edge: usize },

    #[error("enumeration refused: estimated work {estimated} exceeds cap {cap} (length {length})")]
    OracleCap {
        estimated: u128,
        cap: u128,
        length: usize,
    },

    #[error("matrix is not symmetric (max asymmetry {0:e})")]
    Asymmetric(f64),

    #[error("unknown method `{0}`")]
    UnknownMethod(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
