use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid dimensions: {0}")]
    InvalidDimension(String),

    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("matrix is not unitary (deviation {0:e})")]
    NotUnitary(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("invalid factorization: {0}")]
    InvalidFactorization(String),

    #[error("invalid target spectrum: {0}")]
    InvalidTarget(String),

    #[error("covariance violates the uncertainty bound (min symplectic eigenvalue {0})")]
    UncertaintyViolation(f64),

    #[error("matrix is not symmetric (deviation {0:e})")]
    NotSymmetric(f64),

    #[error("matrix is not symplectic (defect {0:e})")]
    NotSymplectic(f64),

    #[error("global Gaussian state is mixed (purity {0}); use the two-mode log-negativity instead")]
    MixedState(f64),

    #[error("williamson decomposition residual {0:e} exceeds tolerance")]
    WilliamsonFailed(f64),

    #[error("invalid mode selection: {0}")]
    InvalidModes(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("system is unbound: normal-mode frequency {0:e} is effectively zero")]
    Unbound(f64),

    #[error("decomposition failed: {0}")]
    Decomposition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier for machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::InvalidDimension(_) => "invalid_dimension",
            Error::NotNormalized(_) => "not_normalized",
            Error::NotHermitian(_) => "not_hermitian",
            Error::NotUnitary(_) => "not_unitary",
            Error::InvalidTrace(_) => "invalid_trace",
            Error::NotPositive(_) => "not_positive",
            Error::InvalidFactorization(_) => "invalid_factorization",
            Error::InvalidTarget(_) => "invalid_target",
            Error::UncertaintyViolation(_) => "invalid_covariance",
            Error::NotSymmetric(_) => "not_symmetric",
            Error::NotSymplectic(_) => "not_symplectic",
            Error::MixedState(_) => "mixed_state",
            Error::WilliamsonFailed(_) => "williamson_failed",
            Error::InvalidModes(_) => "invalid_modes",
            Error::InvalidParams(_) => "invalid_params",
            Error::Unbound(_) => "unbound",
            Error::Decomposition(_) => "decomposition",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
