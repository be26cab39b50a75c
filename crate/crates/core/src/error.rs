use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("distance matrix is empty")]
    Empty,

    #[error("non-finite or negative distance at ({0}, {1})")]
    BadDistance(usize, usize),

    #[error("nonzero diagonal entry at {0}")]
    NonZeroDiagonal(usize),

    #[error("distance matrix is not symmetric at ({0}, {1})")]
    NonSymmetric(usize, usize),

    #[error("triangle inequality violated: d({0},{2}) > d({0},{1}) + d({1},{2})")]
    TriangleViolation(usize, usize, usize),

    #[error("bad weights: {0}")]
    BadWeights(String),

    #[error("enumeration too large: {size} tuples exceed the limit {limit}")]
    TooLarge { size: u128, limit: u128 },

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("coupling marginals do not match: {0}")]
    MarginalMismatch(String),

    #[error("Lambda measure has zero total mass")]
    DegenerateLambda,

    #[error("coalescent run did not reach a single block")]
    NotFullyCoalesced,

    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),

    #[error("invalid Lambda specification `{0}`: {1}")]
    BadLambdaSpec(String, String),

    #[error("parse error in {location}: {message}")]
    Parse { location: String, message: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
