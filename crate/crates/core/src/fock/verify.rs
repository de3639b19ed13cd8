use rayon::prelude::*;
use serde::Serialize;

use super::build::build_state_with_tolerance;
use super::dm::{
    cov_from_fock, entropy_fock, negativity_fock, partial_trace, purity_fock, thermal_deficit,
    thermal_dm_with_tolerance, FockDm,
};
use super::unitary::{local_unitary, pin_conventions};
use crate::gaussian::{lemma1_factor, symplectic_eigenvalues, Covariance, SingleModeCov, TwoModeCov};
use crate::matkit::{symmetric_eig2, ComplexMatrix, RealMatrix};
use crate::measures::{entropy_of_spectrum, f_entropy, mutual_information, pt_spectrum, purity};
use crate::states::{random_valid, seeded_rng, RandomBounds};
use crate::{tolerances, Result};

/// Cutoff used for the reference corpus (dimension 625).
pub const CORPUS_CUTOFF: usize = 24;

/// Cutoff of the generator sign self-test run before every corpus.
const PIN_CUTOFF: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyTolerances {
    pub entropy: f64,
    pub purity: f64,
    pub mutual_information: f64,
    /// Fock negativity above this is an entangled verdict.
    pub negativity: f64,
    /// Largest thermal truncation deficit accepted when building states.
    pub trace_deficit: f64,
}

impl Default for VerifyTolerances {
    fn default() -> Self {
        Self {
            entropy: tolerances::VERIFY_ENTROPY,
            purity: tolerances::VERIFY_PURITY,
            mutual_information: tolerances::VERIFY_MUTUAL_INFORMATION,
            negativity: tolerances::VERIFY_NEGATIVITY,
            trace_deficit: tolerances::FOCK_TRACE_DEFICIT,
        }
    }
}

/// Closed-form values next to their Fock-space counterparts.
///
/// Two-mode-only quantities are `None` for single-mode runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationRecord {
    pub label: String,
    pub modes: usize,
    pub cutoff: usize,
    pub thermal_deficit: f64,
    pub entropy_closed: f64,
    pub entropy_fock: f64,
    pub entropy_gap: f64,
    pub purity_closed: f64,
    pub purity_fock: f64,
    pub purity_gap: f64,
    pub mutual_information_closed: Option<f64>,
    pub mutual_information_fock: Option<f64>,
    pub mutual_information_gap: Option<f64>,
    pub nt_minus: Option<f64>,
    pub negativity_fock: Option<f64>,
    pub separable_closed: Option<bool>,
    pub separable_fock: Option<bool>,
    pub covariance_gap: f64,
    pub pass: bool,
}

impl VerificationRecord {
    fn judge(&mut self, tol: &VerifyTolerances) {
        let within = |gap: Option<f64>, bound: f64| gap.is_none_or(|g| g <= bound);
        self.pass = self.entropy_gap <= tol.entropy
            && self.purity_gap <= tol.purity
            && within(self.mutual_information_gap, tol.mutual_information)
            && self.separable_closed == self.separable_fock;
    }
}

/// Builds the Fock state of `σ` from its factorization and compares every
/// closed form against the truncated density matrix.
pub fn verify_state(
    label: &str,
    sigma: &TwoModeCov,
    cutoff: usize,
    tol: &VerifyTolerances,
) -> Result<VerificationRecord> {
    let spectrum = symplectic_eigenvalues(sigma)?;
    let (t1, t2) = spectrum.thermal_photons();
    let photons = (t1.max(0.0), t2.max(0.0));
    let factors = lemma1_factor(sigma)?;
    let rho = build_state_with_tolerance(&factors, photons, cutoff, tol.trace_deficit)?;

    let entropy_closed = entropy_of_spectrum(&spectrum)?;
    let entropy = entropy_fock(&rho)?;
    let purity_closed = purity(sigma);
    let purity_f = purity_fock(&rho);
    let local = entropy_fock(&partial_trace(&rho, 0)?)? + entropy_fock(&partial_trace(&rho, 1)?)?;
    let mi_closed = mutual_information(sigma)?;
    let mi_fock = local - entropy;
    let nt_minus = pt_spectrum(sigma)?.n_minus;
    let negativity = negativity_fock(&rho)?;

    let mut record = VerificationRecord {
        label: label.to_string(),
        modes: 2,
        cutoff,
        thermal_deficit: thermal_deficit(photons.0, cutoff).max(thermal_deficit(photons.1, cutoff)),
        entropy_closed,
        entropy_fock: entropy,
        entropy_gap: (entropy - entropy_closed).abs(),
        purity_closed,
        purity_fock: purity_f,
        purity_gap: (purity_f - purity_closed).abs(),
        mutual_information_closed: Some(mi_closed),
        mutual_information_fock: Some(mi_fock),
        mutual_information_gap: Some((mi_fock - mi_closed).abs()),
        nt_minus: Some(nt_minus),
        negativity_fock: Some(negativity),
        separable_closed: Some(nt_minus >= 0.5 - tolerances::PPT),
        separable_fock: Some(negativity <= tol.negativity),
        covariance_gap: (&cov_from_fock(&rho) - sigma.matrix()).max_abs(),
        pass: false,
    };
    record.judge(tol);
    Ok(record)
}

/// Single-mode counterpart of [`verify_state`]: `σ = ν Sᵀ S` realized as
/// `U_S ν_n̄ U_S†`.
pub fn verify_single(
    label: &str,
    sigma: &SingleModeCov,
    cutoff: usize,
    tol: &VerifyTolerances,
) -> Result<VerificationRecord> {
    let m = sigma.matrix();
    let nu = sigma.symplectic_eigenvalue();
    let nbar = (nu - 0.5).max(0.0);
    let thermal = thermal_dm_with_tolerance(nbar, cutoff, tol.trace_deficit)?;
    let (l1, l2, theta) = symmetric_eig2(m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    let s = &RealMatrix::from_diag(&[(l1 / nu).sqrt(), (l2 / nu).sqrt()])
        * &crate::gaussian::rotation2(-theta);
    let rho = if s == RealMatrix::identity(2) {
        thermal
    } else {
        let u = local_unitary(&s, cutoff)?;
        let r = &(&u * thermal.matrix()) * &u.adjoint();
        let r = ComplexMatrix::from_fn(r.rows(), r.cols(), |i, j| (r[(i, j)] + r[(j, i)].conj()) * 0.5);
        FockDm::new(r, cutoff, 1)?
    };
    let entropy_closed = f_entropy(nu)?;
    let entropy = entropy_fock(&rho)?;
    let purity_closed = purity(sigma);
    let purity_f = purity_fock(&rho);
    let mut record = VerificationRecord {
        label: label.to_string(),
        modes: 1,
        cutoff,
        thermal_deficit: thermal_deficit(nbar, cutoff),
        entropy_closed,
        entropy_fock: entropy,
        entropy_gap: (entropy - entropy_closed).abs(),
        purity_closed,
        purity_fock: purity_f,
        purity_gap: (purity_f - purity_closed).abs(),
        mutual_information_closed: None,
        mutual_information_fock: None,
        mutual_information_gap: None,
        nt_minus: None,
        negativity_fock: None,
        separable_closed: None,
        separable_fock: None,
        covariance_gap: (&cov_from_fock(&rho) - m).max_abs(),
        pass: false,
    };
    record.judge(tol);
    Ok(record)
}

/// One member of the reference corpus with its generating draw.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusState {
    pub label: String,
    pub draw: u64,
    pub sigma: TwoModeCov,
}

const CORPUS_SEED: u64 = 0x5eed_2c0f;
const CORPUS_SIZE: usize = 10;
const CORPUS_BOUNDS: RandomBounds = RandomBounds { max_thermal: 1.5, max_squeeze: 0.8, rotations: true };

/// Ten mixed states drawn from [`random_valid`] with `n̄∓ ≤ 1.5` and every
/// squeezing parameter in `[−0.8, 0.8]`.
///
/// Draws are kept only if the state is resolvable at [`CORPUS_CUTOFF`]
/// (thermal deficits within [`tolerances::FOCK_TRACE_DEFICIT`], mean photon
/// number per mode at most [`CORPUS_MAX_PHOTONS`]) and not within 0.01 of the
/// PPT boundary.
pub fn corpus() -> Result<Vec<CorpusState>> {
    let mut rng = seeded_rng(CORPUS_SEED);
    let mut out = Vec::with_capacity(CORPUS_SIZE);
    let mut draw = 0;
    while out.len() < CORPUS_SIZE {
        let (sigma, _, spectrum) = random_valid(&mut rng, &CORPUS_BOUNDS)?;
        draw += 1;
        let (t1, t2) = spectrum.thermal_photons();
        let deficit = thermal_deficit(t1, CORPUS_CUTOFF).max(thermal_deficit(t2, CORPUS_CUTOFF));
        let m = sigma.matrix();
        let photons = 0.5 * (m[(0, 0)] + m[(1, 1)] - 1.0).max(m[(2, 2)] + m[(3, 3)] - 1.0);
        let boundary = (pt_spectrum(&sigma)?.n_minus - 0.5).abs();
        if deficit <= tolerances::FOCK_TRACE_DEFICIT && photons <= CORPUS_MAX_PHOTONS && boundary >= 0.01 {
            out.push(CorpusState { label: format!("corpus-{}", out.len()), draw, sigma });
        }
    }
    Ok(out)
}

/// Largest mean photon number per mode admitted to the corpus.
pub const CORPUS_MAX_PHOTONS: f64 = 2.0;

/// Runs the sign self-test, then verifies every corpus state in parallel.
pub fn verify_corpus(cutoff: usize, tol: &VerifyTolerances) -> Result<Vec<VerificationRecord>> {
    pin_conventions(PIN_CUTOFF)?;
    corpus()?
        .par_iter()
        .map(|c| verify_state(&c.label, &c.sigma, cutoff, tol))
        .collect()
}
