use std::f64::consts::FRAC_PI_2;

use super::cov::{validate, Covariance, TwoModeCov};
use super::spectrum::SymplecticSpectrum;
use super::standard_form::standard_form_transform;
use super::symplectic::SymplecticTransform;
use crate::matkit::{symmetric_eig2, RealMatrix};
use crate::{tolerances, Error, Result};

/// Parameters of `A = S_loc(r1, r2) R(ξ) S_tm(r) R(η) S_l`, the symplectic
/// with `σ = Aᵀ ν A` and `ν = diag(n−, n−, n+, n+)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Factors {
    pub s_l: SymplecticTransform,
    pub eta: f64,
    pub xi: f64,
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
}

impl Lemma1Factors {
    pub fn compose(&self) -> SymplecticTransform {
        SymplecticTransform::local_squeeze(self.r1, self.r2)
            .then(&SymplecticTransform::rotation(self.xi))
            .then(&SymplecticTransform::two_mode_squeeze(self.r))
            .then(&SymplecticTransform::rotation(self.eta))
            .then(&self.s_l)
    }
}

/// Intermediate matrices of the reduction `σ → ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct Lemma1Stages {
    /// `S_l⁻ᵀ σ S_l⁻¹`, in standard form.
    pub standard_form: RealMatrix,
    /// After `R(η)⁻¹ S_tm(r)⁻¹`: the x-block `δ` is `s I`.
    pub after_two_mode_squeeze: RealMatrix,
    /// After `R(ξ)⁻¹`: diagonal.
    pub after_rotation: RealMatrix,
    /// After `S_loc(r1, r2)⁻¹`: `diag(n−, n−, n+, n+)`.
    pub normal_form: RealMatrix,
}

struct Reduction {
    factors: Lemma1Factors,
    stages: Lemma1Stages,
    spectrum: SymplecticSpectrum,
}

fn reduce(sigma: &TwoModeCov) -> Result<Reduction> {
    let (t_sf, sf) = standard_form_transform(sigma)?;
    let m = sf.matrix();
    let (a, b, c1) = (m[(0, 0)], m[(2, 2)], m[(0, 2)]);

    let coupled = c1.abs() > 1e-14 * a.max(b);
    let (eta, r) = if coupled {
        let (l1, l2, theta) = symmetric_eig2(a, c1, b);
        (theta, 0.25 * (l1 / l2).ln())
    } else {
        (0.0, 0.0)
    };
    let t1 = SymplecticTransform::rotation(-eta).then(&SymplecticTransform::two_mode_squeeze(-r));
    let s2 = t1.matrix().congruence(m);

    let xi = if coupled {
        let (p1, p2, theta) = symmetric_eig2(s2[(1, 1)], s2[(1, 3)], s2[(3, 3)]);
        if p1 <= p2 { theta } else { theta + FRAC_PI_2 }
    } else if a <= b {
        0.0
    } else {
        FRAC_PI_2
    };
    let t2 = SymplecticTransform::rotation(-xi);
    let s3 = t2.matrix().congruence(&s2);

    let r1 = 0.25 * (s3[(0, 0)] / s3[(1, 1)]).ln();
    let r2 = 0.25 * (s3[(2, 2)] / s3[(3, 3)]).ln();
    let t3 = SymplecticTransform::local_squeeze(-r1, -r2);
    let s4 = t3.matrix().congruence(&s3);

    let n_minus = (s3[(0, 0)] * s3[(1, 1)]).sqrt();
    let n_plus = (s3[(2, 2)] * s3[(3, 3)]).sqrt();
    let factors = Lemma1Factors { s_l: t_sf.inverse(), eta, xi, r, r1, r2 };
    Ok(Reduction {
        factors,
        stages: Lemma1Stages {
            standard_form: m.clone(),
            after_two_mode_squeeze: s2,
            after_rotation: s3,
            normal_form: s4,
        },
        spectrum: SymplecticSpectrum { n_minus, n_plus },
    })
}

fn normal_form(spectrum: &SymplecticSpectrum) -> RealMatrix {
    let (lo, hi) = (spectrum.n_minus, spectrum.n_plus);
    RealMatrix::from_diag(&[lo, lo, hi, hi])
}

fn reconstruction_residual(a: &SymplecticTransform, nu: &RealMatrix, sigma: &TwoModeCov) -> f64 {
    (&a.matrix().congruence(nu) - sigma.matrix()).frobenius_norm()
}

/// Factorization of `σ` through standard form, a rotated two-mode squeezing,
/// a mode rotation, and local squeezing.
pub fn lemma1_factor(sigma: &TwoModeCov) -> Result<Lemma1Factors> {
    let red = reduce(sigma)?;
    let residual =
        reconstruction_residual(&red.factors.compose(), &normal_form(&red.spectrum), sigma);
    if !(residual <= tolerances::FACTORIZATION * sigma.matrix().frobenius_norm().max(1.0)) {
        return Err(Error::FactorizationFailure { residual });
    }
    Ok(red.factors)
}

pub fn lemma1_stages(sigma: &TwoModeCov) -> Result<Lemma1Stages> {
    reduce(sigma).map(|red| red.stages)
}

/// Normal-mode decomposition `σ = Sᵀ ν S`, `ν = diag(n−, n−, n+, n+)`.
pub fn williamson(sigma: &TwoModeCov) -> Result<(SymplecticTransform, TwoModeCov)> {
    let red = reduce(sigma)?;
    let nu = normal_form(&red.spectrum);
    let s = red.factors.compose();
    let residual = reconstruction_residual(&s, &nu, sigma);
    if !(residual <= 1e-8 * sigma.matrix().frobenius_norm().max(1.0)) {
        return Err(Error::FactorizationFailure { residual });
    }
    Ok((s, validate(&nu)?))
}
