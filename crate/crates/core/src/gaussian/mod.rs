//! Covariance-matrix algebra for one- and two-mode Gaussian states.
//!
//! Conventions: ħ = 1, `[x, p] = i`, quadrature ordering `(x1, p1, x2, p2)`,
//! vacuum covariance `I/2`. Symplectic maps act as `σ → Sᵀ σ S`.

mod cov;
mod decomposition;
mod spectrum;
mod standard_form;
mod symplectic;
mod wigner;

pub use cov::{
    symplectic_form, uncertainty_min_eigenvalue, validate, validate_single, Blocks, Covariance,
    LocalInvariants, SingleModeCov, TwoModeCov,
};
pub use decomposition::{lemma1_factor, lemma1_stages, williamson, Lemma1Factors, Lemma1Stages};
pub use spectrum::{
    partial_transpose, partial_transpose_spectrum, spectrum_from_invariants, spectrum_of_matrix,
    spectrum_of_standard_form, spectrum_oracle,
    symplectic_eigenvalues, SymplecticSpectrum,
};
pub use standard_form::{standard_form, standard_form_transform, svd2, StandardFormParams};
pub use symplectic::{apply, rotation2, SymplecticTransform};
pub use wigner::wigner_at;
