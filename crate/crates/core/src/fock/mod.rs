//! Truncated Fock-space oracle.
//!
//! Builds the density matrix of a Gaussian state from its factorization and
//! evaluates entropies, purities, reduced states and negativities directly,
//! independent of the covariance-matrix formulas.
//!
//! Two-mode basis: `|k1 k2⟩ ↔ k1 (N+1) + k2`, mode 1 outer.

mod build;
mod dm;
mod verify;
mod ops;
mod unitary;

pub use build::{build_state, build_state_with_tolerance};
pub use dm::{
    cov_from_fock, entropy_fock, negativity_fock, partial_trace, partial_transpose_fock,
    purity_fock, thermal_dm, thermal_dm_with_tolerance, thermal_weights, FockDm,
};
pub use ops::{LadderOps, SparseOp};
pub use unitary::{gaussian_unitary, local_unitary, pin_conventions, GaussianUnitary};
pub use verify::{
    corpus, verify_corpus, verify_single, verify_state, CorpusState, VerificationRecord,
    VerifyTolerances, CORPUS_CUTOFF, CORPUS_MAX_PHOTONS,
};
