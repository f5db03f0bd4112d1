use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unsupported dimension {0}, expected 2 or 3")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: polytope is {polytope}-dimensional, direction is {direction}-dimensional")]
    DimensionMismatch { polytope: usize, direction: usize },

    #[error("direction has norm {0}, expected a unit vector")]
    NotUnit(f64),

    #[error("direction is the zero vector")]
    ZeroDirection,

    #[error("vertex {index} has {found} coordinates, expected {expected}")]
    VertexArity {
        index: usize,
        found: usize,
        expected: usize,
    },

    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),

    #[error("a polytope needs at least 2 distinct vertices, got {0}")]
    TooFewVertices(usize),

    #[error("edge normalization must be positive and finite, got {0}")]
    InvalidEdgeNorm(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no reference value for {body} with k = {k}")]
    NotAvailable { body: &'static str, k: u32 },

    #[error("empty sample set")]
    EmptySample,

    #[error("adaptive quadrature did not converge: estimated error {achieved:e} exceeds tolerance {tolerance:e}")]
    NoConvergence { achieved: f64, tolerance: f64 },
}
