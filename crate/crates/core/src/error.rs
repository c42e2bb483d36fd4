use thiserror::Error;

/// Errors raised by the algebra, calculus and geometry layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-invertible scalar: {0}")]
    NonInvertibleScalar(String),
    #[error("singular limit: {0}")]
    SingularLimit(String),
    #[error("not invertible: generator `{0}` has no inverse in this algebra")]
    NotInvertible(String),
    #[error("algebra mismatch: `{0}` vs `{1}`")]
    AlgebraMismatch(String, String),
    #[error("calculus mismatch: `{0}` vs `{1}`")]
    CalculusMismatch(String, String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("rewrite did not terminate within {0} steps")]
    RewriteLimit(usize),
    #[error("unsupported degree {0}")]
    UnsupportedDegree(usize),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("slot {slot} out of range for rank {rank}")]
    SlotOutOfRange { slot: usize, rank: usize },
    #[error("cannot evaluate: {0}")]
    CannotEvaluate(String),
    #[error("invalid n: {0}")]
    InvalidN(i64),
    #[error("not a frame calculus: {0}")]
    NotFrame(String),
    #[error("non-invertible map: {0}")]
    NonInvertibleMap(String),
    #[error("{0}")]
    Other(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
