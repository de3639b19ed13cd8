use super::dm::{cov_from_fock, FockDm};
use super::ops::LadderOps;
use crate::gaussian::{rotation2, svd2, SymplecticTransform};
use crate::matkit::{c64, expm, ComplexMatrix, RealMatrix, C64};
use crate::{tolerances, Error, Result};

/// Elementary Gaussian unitaries. Each one realizes, through
/// `ρ → U ρ U†`, the covariance map `σ → Sᵀ σ S` of [`GaussianUnitary::symplectic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussianUnitary {
    /// `exp(−iθ a†a)`; realizes `Q(θ)`.
    Phase(f64),
    /// `exp(½ r (a†² − a²))`; realizes `diag(eʳ, e⁻ʳ)`.
    SingleSqueeze(f64),
    /// `exp(r (a1†a2† − a1 a2))`; realizes the two-mode squeezer of the
    /// squeezed vacuum.
    TwoModeSqueeze(f64),
    /// `exp(φ (a1 a2† − a1† a2))`; realizes the mode rotation `R(φ)`.
    Beamsplitter(f64),
}

impl GaussianUnitary {
    pub fn modes(&self) -> usize {
        match self {
            Self::Phase(_) | Self::SingleSqueeze(_) => 1,
            Self::TwoModeSqueeze(_) | Self::Beamsplitter(_) => 2,
        }
    }

    /// The phase-space matrix this unitary realizes (2×2 or 4×4).
    pub fn symplectic(&self) -> RealMatrix {
        match *self {
            Self::Phase(t) => rotation2(t),
            Self::SingleSqueeze(r) => RealMatrix::from_diag(&[r.exp(), (-r).exp()]),
            Self::TwoModeSqueeze(r) => SymplecticTransform::tmsv_squeeze(r).matrix().clone(),
            Self::Beamsplitter(p) => SymplecticTransform::rotation(p).matrix().clone(),
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Self::Phase(_) => "phase rotation",
            Self::SingleSqueeze(_) => "single-mode squeezer",
            Self::TwoModeSqueeze(_) => "two-mode squeezer",
            Self::Beamsplitter(_) => "beamsplitter",
        }
    }
}

pub fn gaussian_unitary(kind: GaussianUnitary, cutoff: usize) -> Result<ComplexMatrix> {
    if cutoff == 0 {
        return Err(Error::OutOfRange("cutoff must be at least 1".into()));
    }
    let ops = LadderOps::new(cutoff);
    let d = cutoff + 1;
    let u = match kind {
        GaussianUnitary::Phase(theta) => ComplexMatrix::from_diag(
            &(0..d).map(|k| C64::from_polar(1.0, -theta * k as f64)).collect::<Vec<_>>(),
        ),
        GaussianUnitary::SingleSqueeze(r) => {
            let a2 = &ops.a * &ops.a;
            let ad2 = &ops.a_dag * &ops.a_dag;
            expm(&(&ad2 - &a2).scale(c64(0.5 * r, 0.0)))?
        }
        GaussianUnitary::TwoModeSqueeze(r) => {
            let g = &ops.a_dag.kron(&ops.a_dag) - &ops.a.kron(&ops.a);
            expm(&g.scale(c64(r, 0.0)))?
        }
        GaussianUnitary::Beamsplitter(phi) => {
            let g = &ops.a.kron(&ops.a_dag) - &ops.a_dag.kron(&ops.a);
            expm(&g.scale(c64(phi, 0.0)))?
        }
    };
    Ok(u)
}

/// Unitary of a single-mode symplectic `S = Q(φ) diag(eˢ, e⁻ˢ) Q(θ)`:
/// `U = U(Q(θ)) U(squeeze s) U(Q(φ))`. Identity factors are skipped.
pub fn local_unitary(s: &RealMatrix, cutoff: usize) -> Result<ComplexMatrix> {
    if s.rows() != 2 || s.cols() != 2 {
        return Err(Error::Shape(format!("expected 2×2, got {}×{}", s.rows(), s.cols())));
    }
    let det = s.det()?;
    if (det - 1.0).abs() > tolerances::SYMPLECTIC * s.max_abs().powi(2).max(1.0) {
        return Err(Error::NotSymplectic { deviation: (det - 1.0).abs() });
    }
    let (phi, sx, _, theta) = svd2(s);
    let mut u = ComplexMatrix::identity(cutoff + 1);
    let squeeze = sx.ln();
    for kind in [
        GaussianUnitary::Phase(theta),
        GaussianUnitary::SingleSqueeze(squeeze),
        GaussianUnitary::Phase(phi),
    ] {
        let trivial = matches!(kind, GaussianUnitary::Phase(t) | GaussianUnitary::SingleSqueeze(t) if t == 0.0);
        if !trivial {
            u = &u * &gaussian_unitary(kind, cutoff)?;
        }
    }
    Ok(u)
}

fn probe_state(coeffs: &[C64], cutoff: usize) -> Vec<C64> {
    let norm = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let mut psi = vec![c64(0.0, 0.0); cutoff + 1];
    for (p, c) in psi.iter_mut().zip(coeffs) {
        *p = c / norm;
    }
    psi
}

fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|x| b.iter().map(move |y| x * y)).collect()
}

fn apply_vec(u: &ComplexMatrix, psi: &[C64]) -> Vec<C64> {
    (0..u.rows()).map(|i| u.row(i).iter().zip(psi).map(|(a, b)| a * b).sum()).collect()
}

fn pushforward_gap(u: &ComplexMatrix, s: &RealMatrix, psi: &[C64], cutoff: usize, modes: usize) -> Result<f64> {
    let before = cov_from_fock(&FockDm::pure(psi, cutoff, modes)?);
    let after = cov_from_fock(&FockDm::pure(&apply_vec(u, psi), cutoff, modes)?);
    Ok((&after - &s.congruence(&before)).max_abs())
}

/// Checks every generator sign against its phase-space matrix by pushing the
/// covariance of non-Gaussian probe states through both.
pub fn pin_conventions(cutoff: usize) -> Result<()> {
    let psi1 = probe_state(&[c64(0.6, 0.0), c64(0.5, 0.3), c64(0.2, -0.4)], cutoff);
    let psi2 = probe_state(&[c64(0.7, 0.0), c64(-0.3, 0.2), c64(0.0, 0.4)], cutoff);
    let psi12 = kron_vec(&psi1, &psi2);
    let mut checks: Vec<(String, ComplexMatrix, RealMatrix, usize)> = Vec::new();
    for kind in [
        GaussianUnitary::Phase(0.7),
        GaussianUnitary::SingleSqueeze(0.3),
        GaussianUnitary::TwoModeSqueeze(0.25),
        GaussianUnitary::Beamsplitter(0.4),
    ] {
        checks.push((kind.name().into(), gaussian_unitary(kind, cutoff)?, kind.symplectic(), kind.modes()));
    }
    let r = 0.3;
    let tm = gaussian_unitary(GaussianUnitary::SingleSqueeze(r), cutoff)?
        .kron(&gaussian_unitary(GaussianUnitary::SingleSqueeze(-r), cutoff)?);
    checks.push(("S_tm".into(), tm, SymplecticTransform::two_mode_squeeze(r).matrix().clone(), 2));
    let loc = &(&rotation2(0.3) * &RealMatrix::from_diag(&[1.2, 1.0 / 1.2])) * &rotation2(-0.8);
    checks.push(("local symplectic".into(), local_unitary(&loc, cutoff)?, loc, 1));

    for (generator, u, s, modes) in checks {
        let psi = if modes == 1 { &psi1 } else { &psi12 };
        let gap = pushforward_gap(&u, &s, psi, cutoff, modes)?;
        if !(gap <= tolerances::FOCK_CONVENTION) {
            return Err(Error::ConventionMismatch { generator, gap });
        }
    }
    Ok(())
}
