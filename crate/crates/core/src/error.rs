use thiserror::Error;

use crate::matkit::LinalgError;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Linalg(#[from] LinalgError),

    #[error("malformed covariance matrix: {0}")]
    Shape(String),

    /// The uncertainty relation `σ + iΩ/2 ≥ 0` is violated.
    #[error("unphysical state: minimum eigenvalue of σ + iΩ/2 is {min_eigenvalue:.6e}")]
    Unphysical { min_eigenvalue: f64 },

    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    #[error("local invariants are inconsistent: {0}")]
    InvariantInconsistency(String),

    #[error("matrix is not symplectic (|SᵀΩS - Ω| = {deviation:.3e})")]
    NotSymplectic { deviation: f64 },

    #[error("symplectic factorization failed (reconstruction residual {residual:.3e})")]
    FactorizationFailure { residual: f64 },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("unsupported state: {0}")]
    UnsupportedState(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("Fock cutoff {cutoff} too small: truncated trace deficit {deficit:.3e}")]
    CutoffTooSmall { cutoff: usize, deficit: f64 },

    #[error("Fock-space sign convention mismatch for {generator}: covariance gap {gap:.3e}")]
    ConventionMismatch { generator: String, gap: f64 },
}
