use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must have at least one coordinate")]
    EmptyVector,
    #[error("non-finite value {0}")]
    NonFinite(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid norm: {0}")]
    InvalidNorm(String),
    #[error("invalid bounds: lo {lo} > hi {hi}")]
    InvalidBounds { lo: String, hi: String },
    #[error("tolerances must be strictly positive")]
    InvalidTolerance,
    #[error("point lies outside the map's domain")]
    OutsideDomain,
    #[error("anchor point must lie on the unit sphere (norm {0})")]
    NotOnSphere(String),
    #[error("dimension must be >= 2 for the open-ball retraction, got {0}")]
    LowDimension(usize),
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("sup norm requested for an unbounded field")]
    Unbounded,
    #[error("sampler produced no points")]
    EmptySampler,
    #[error("cannot parse field expression {0:?}")]
    ParseField(String),
    #[error("value {0} does not fit an integer")]
    IntegerOverflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
