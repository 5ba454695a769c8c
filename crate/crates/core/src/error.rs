use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("size mismatch: expected {expected}, got {actual}")]
    SizeMismatch { expected: usize, actual: usize },
    #[error("empty occupation word")]
    EmptyWord,
    #[error("invalid occupation string: {0}")]
    InvalidWord(String),
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("problem size {size} exceeds the supported maximum of {max} for {what}")]
    TooLarge {
        what: &'static str,
        size: usize,
        max: usize,
    },
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("class operator index k={k} outside 2..={n}")]
    ClassOperatorRange { k: usize, n: usize },
    #[error("could not separate the class-operator spectrum after {attempts} weight draws")]
    DegenerateSpectrum { attempts: usize },
    #[error("spectral profile is not normalized: integral = {integral}")]
    UnnormalizedProfile { integral: f64 },
    #[error("invalid spectral profile: {0}")]
    InvalidProfile(String),
    #[error("interferometer matrix is not unitary (deviation {deviation:e})")]
    NotUnitary { deviation: f64 },
    #[error("immanant count mismatch for {lambda}: found {found}, tableau rule gives {expected}")]
    ImmanantCountMismatch {
        lambda: String,
        found: usize,
        expected: usize,
    },
    #[error("immanant relation check failed for {lambda}: residual {residual:e}")]
    ImmanantRelation { lambda: String, residual: f64 },
    #[error("immanant fit residual {residual:e} for {lambda} exceeds tolerance")]
    FitResidual { lambda: String, residual: f64 },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("non-finite value: {0}")]
    NonFinite(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
