use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max asymmetry {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("eigensolver did not converge within {budget} iterations")]
    NoConvergence { budget: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Fock cutoff {cutoff} too small: truncated tail mass {tail:.3e}")]
    CutoffTooSmall { cutoff: usize, tail: f64 },

    #[error("state is not normalized (squared norm {norm_sqr:.15})")]
    NotNormalized { norm_sqr: f64 },

    #[error("blockwise propagation requires exact resonance")]
    NotResonant,

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
