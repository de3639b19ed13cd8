use super::dm::{check_thermal, thermal_weights, FockDm};
use super::unitary::{gaussian_unitary, local_unitary, GaussianUnitary};
use crate::gaussian::Lemma1Factors;
use crate::matkit::{c64, ComplexMatrix};
use crate::{tolerances, Error, Result};

/// `ρ = U_A (ν_{n̄−} ⊗ ν_{n̄+}) U_A†` with `U_A` realizing
/// `A = S_loc(r1, r2) R(ξ) S_tm(r) R(η) S_l`.
pub fn build_state(factors: &Lemma1Factors, photons: (f64, f64), cutoff: usize) -> Result<FockDm> {
    build_state_with_tolerance(factors, photons, cutoff, tolerances::FOCK_TRACE_DEFICIT)
}

/// As [`build_state`] with a caller-chosen thermal deficit bound.
pub fn build_state_with_tolerance(
    factors: &Lemma1Factors,
    photons: (f64, f64),
    cutoff: usize,
    tolerance: f64,
) -> Result<FockDm> {
    check_thermal(photons.0, cutoff, tolerance)?;
    check_thermal(photons.1, cutoff, tolerance)?;
    let d = cutoff + 1;
    let p1 = thermal_weights(photons.0, cutoff);
    let p2 = thermal_weights(photons.1, cutoff);
    let root: Vec<_> = p1.iter().flat_map(|a| p2.iter().map(move |b| c64((a * b).sqrt(), 0.0))).collect();
    // W = U_A √ν, so that ρ = W W†. The first factor of A acts first.
    let mut w = ComplexMatrix::from_diag(&root);
    let id = || ComplexMatrix::identity(d);
    let squeeze = |r: f64| gaussian_unitary(GaussianUnitary::SingleSqueeze(r), cutoff);

    if factors.r1 != 0.0 || factors.r2 != 0.0 {
        let u1 = if factors.r1 != 0.0 { squeeze(factors.r1)? } else { id() };
        let u2 = if factors.r2 != 0.0 { squeeze(factors.r2)? } else { id() };
        w = ComplexMatrix::kron_apply(&u1, &u2, &w);
    }
    if factors.xi != 0.0 {
        w = &gaussian_unitary(GaussianUnitary::Beamsplitter(factors.xi), cutoff)? * &w;
    }
    if factors.r != 0.0 {
        w = ComplexMatrix::kron_apply(&squeeze(factors.r)?, &squeeze(-factors.r)?, &w);
    }
    if factors.eta != 0.0 {
        w = &gaussian_unitary(GaussianUnitary::Beamsplitter(factors.eta), cutoff)? * &w;
    }
    let (s1, s2) = factors
        .s_l
        .local_blocks()
        .ok_or_else(|| Error::UnsupportedState("S_l is not a local symplectic".into()))?;
    let identity2 = crate::matkit::RealMatrix::identity(2);
    if s1 != identity2 || s2 != identity2 {
        w = ComplexMatrix::kron_apply(&local_unitary(&s1, cutoff)?, &local_unitary(&s2, cutoff)?, &w);
    }
    let rho = &w * &w.adjoint();
    let rho = ComplexMatrix::from_fn(rho.rows(), rho.cols(), |i, j| (rho[(i, j)] + rho[(j, i)].conj()) * 0.5);
    FockDm::new(rho, cutoff, 2)
}
