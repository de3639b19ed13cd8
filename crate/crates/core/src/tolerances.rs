//! Numerical tolerances shared across the crate.
//!
//! Every threshold that decides a verdict (validity, purity, symmetry,
//! convergence) lives here so that the acceptance suite and the library
//! agree on the same numbers.

/// Maximum entrywise asymmetry `|m - mᵀ|` accepted for a covariance matrix,
/// relative to `max(1, max|m|)`.
pub const SYMMETRY: f64 = 1e-12;

/// Maximum deviation from Hermiticity accepted by the Hermitian eigensolvers.
pub const HERMITIAN: f64 = 1e-10;

/// Slack on the uncertainty relation: the minimum eigenvalue of `σ + iΩ/2`
/// may be this negative and the state is still accepted.
pub const HEISENBERG: f64 = 1e-10;

/// `Δ² - 4 Det σ` more negative than this (relative to `max(1, Δ²)`) is an
/// error; anything between it and zero is clamped to a degenerate spectrum.
pub const DISCRIMINANT: f64 = 1e-12;

/// Negative discriminant slack when recovering the standard-form couplings.
pub const STANDARD_FORM_DISCRIMINANT: f64 = 1e-10;

/// `SᵀΩS = Ω` within this Frobenius distance, relative to `max(1, |S|²)`.
pub const SYMPLECTIC: f64 = 1e-9;

/// The ± pairing of the eigenvalues of `iΩσ`, relative to the largest one.
pub const SPECTRUM_PAIRING: f64 = 1e-8;

/// Entropy function domain slack below `x = 1/2`.
pub const ENTROPY_DOMAIN: f64 = 1e-12;

/// Below this distance from 1/2 the `(x - ½) ln(x - ½)` term is taken as zero.
pub const ENTROPY_SINGULARITY: f64 = 1e-15;

/// Eligibility of the symmetric entanglement-of-formation formula, `|a - b|`.
pub const SYMMETRIC_STATE: f64 = 1e-9;

/// Separability threshold slack on the smallest partially transposed
/// symplectic eigenvalue.
pub const PPT: f64 = 1e-10;

/// Residual accepted from the Lemma-1 style factorization.
pub const FACTORIZATION: f64 = 1e-7;

/// Largest truncated trace deficit of a thermal Fock state for an accepted run.
pub const FOCK_TRACE_DEFICIT: f64 = 1e-6;

/// Fock eigenvalues below this contribute nothing to the entropy.
pub const FOCK_EIGEN_FLOOR: f64 = 1e-14;

/// Covariance gap accepted by the generator sign-convention self-test.
pub const FOCK_CONVENTION: f64 = 1e-6;

/// Default closed-form versus Fock-oracle gaps used by verification runs.
pub const VERIFY_ENTROPY: f64 = 1e-3;
pub const VERIFY_PURITY: f64 = 1e-3;
pub const VERIFY_MUTUAL_INFORMATION: f64 = 2e-3;

/// Negativity above this counts as an entangled Fock-space verdict.
pub const VERIFY_NEGATIVITY: f64 = 1e-4;
