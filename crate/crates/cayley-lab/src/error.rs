use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected n = {expected}, found n = {found}")]
    DimensionMismatch { expected: u8, found: u8 },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u8, found: u8 },
    #[error("degree {degree} out of range for dimension {n}")]
    DegreeOutOfRange { degree: u8, n: u8 },
    #[error("dimension {0} out of range (1..=16)")]
    DimensionOutOfRange(u8),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: u8, n: u8 },
    #[error("repeated index {0} in monomial")]
    RepeatedIndex(u8),
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error("float coefficient not allowed in exact mode")]
    FloatCoefficient,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("linear system is singular")]
    SingularSystem,
    #[error("map is not linear on the monomial basis")]
    NonlinearMap,
    #[error("4-form failed admissibility: {0}")]
    NotAdmissible(String),
    #[error("structure constants violate the Jacobi identity")]
    JacobiFailure,
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
