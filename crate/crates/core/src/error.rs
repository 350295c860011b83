use thiserror::Error;

use crate::darboux::IntegralEstimate;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("variable x{index} out of range for arity {arity}")]
    VarOutOfRange { index: usize, arity: usize },
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("endpoints {a} and {b} are not ordered under type {theta} order")]
    IncomparableEndpoints { a: String, b: String, theta: u8 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid multi-index: {0}")]
    InvalidMultiIndex(String),
    #[error("alternation is limited to degree {max}, got {k}")]
    DegreeTooLarge { k: usize, max: usize },
    #[error("face index j={j} out of range for a {k}-cube")]
    FaceOutOfRange { j: usize, k: usize },
    #[error("a 0-cube has no boundary")]
    BoundaryOfPoint,
    #[error("inconsistent chain: {0}")]
    InconsistentChain(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(
        "integration did not converge at N={}: gap_re={:e}, gap_ze={:e}",
        .0.n, .0.gap_re, .0.gap_ze
    )]
    NotConverged(Box<IntegralEstimate<f64>>),
}
