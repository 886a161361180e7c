use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Error type shared by all modules.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported dimension {0}: expected one of 1, 2, 4, 8, 16")]
    UnsupportedDimension(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("non-finite entry in matrix or state")]
    NonFinite,
    #[error("matrix is not Hermitian: max |H - H'| = {0:.3e}")]
    NotHermitian(f64),
    #[error("matrix is not unitary: max residual {0:.3e}")]
    NotUnitary(f64),
    #[error("not a valid density matrix: {0}")]
    NotDensity(String),
    #[error("state is not normalized: |norm - 1| = {0:.3e}")]
    NotNormalized(f64),
    #[error("initial channel state is not maximally entangled: reduction deviates from I/2 by {0:.3e}")]
    NotMaximallyEntangled(f64),
    #[error("Kraus completeness violated: max residual {0:.3e} (unitarity bug upstream)")]
    CompletenessViolation(f64),
    #[error("eigensolver failed to converge")]
    EigenNonConvergence,
    #[error("three-tangle {0:.3e} negative beyond tolerance: upstream numeric error")]
    TangleViolation(f64),
    #[error("parameter out of range: {0}")]
    InvalidParameter(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
