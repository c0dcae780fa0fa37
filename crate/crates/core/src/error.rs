use thiserror::Error;

/// Errors raised by frame construction, validation and I/O.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not unitary (deviation {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: String },

    #[error("not a density operator: {0}")]
    InvalidState(String),

    #[error("not an effect (0 <= M <= 1): {0}")]
    InvalidEffect(String),

    #[error("not a POVM: effects sum to identity with deviation {deviation:.3e}")]
    InvalidPovm { deviation: f64 },

    #[error("not a channel: {0}")]
    InvalidChannel(String),

    #[error("vector is not unit norm (norm {norm}, tolerance {tol:.1e})")]
    NotUnitNorm { norm: f64, tol: f64 },

    #[error("not a SIC fiducial: {0}")]
    NotSicFiducial(String),

    #[error("not a valid frame: {0}")]
    InvalidFrame(String),

    #[error("Gram matrix is singular or ill-conditioned (condition number {condition:.3e})")]
    IllConditioned { condition: f64 },

    #[error("spectrum violates tr(Q)=1, tr(Q^2)=d: {0}")]
    ConstraintViolation(String),

    #[error("index {index} out of range for {len} elements")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
