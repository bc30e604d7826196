use thiserror::Error;

pub type Result<T, E = TropicError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TropicError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("length mismatch: {points} points but {coefficients} coefficients")]
    LengthMismatch { points: usize, coefficients: usize },

    #[error("a point must have at least one coordinate")]
    EmptyPoint,

    #[error("coordinate {index} is not a finite real ({value})")]
    NonFiniteCoordinate { index: usize, value: f64 },

    #[error("scalar {0} is not in R ∪ {{-inf}}")]
    InvalidScalar(f64),

    #[error("coefficients are not normalized: {0}")]
    Normalization(String),

    #[error("cannot shift by -inf outside a tropical combination")]
    NegativeInfinityShift,

    #[error("a polytope needs at least one generator")]
    EmptyGenerators,

    #[error("parameter {name} = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("coordinate list is empty")]
    EmptyCoordinates,

    #[error("coordinate index {index} is out of range for dimension {dim}")]
    CoordinateOutOfRange { index: usize, dim: usize },

    #[error("coordinate index {0} appears more than once")]
    DuplicateCoordinate(usize),

    #[error("coordinate {index} must be strictly positive, found {value}")]
    NonPositiveCoordinate { index: usize, value: f64 },
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(TropicError::DimensionMismatch { expected, found })
    }
}
