//! Small dense real and complex matrix kernel.
//!
//! Sized for two jobs: exact-structure 2×2 / 4×4 algebra on covariance
//! matrices, and Hermitian eigensolves plus matrix exponentials on truncated
//! Fock spaces of up to a few thousand dimensions. Storage is row-major.

mod complex;
mod dd;
mod eigen;
mod expm;
mod poly;
mod real;

pub use complex::{c64, ComplexMatrix, C64};
pub(crate) use dd::Dd;
pub use eigen::{
    hermitian_eig, hermitian_eig_jacobi, hermitian_eigvals, symmetric_eig2, HermitianEigen,
};
pub use expm::expm;
pub use poly::{complex_eigvals, poly_roots};
pub use real::RealMatrix;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },
    #[error("matrix contains NaN or infinite entries")]
    NonFinite,
    #[error("unsupported matrix size {size}")]
    UnsupportedSize { size: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("eigensolver did not converge")]
    NoConvergence,
}

pub type LinalgResult<T> = std::result::Result<T, LinalgError>;
