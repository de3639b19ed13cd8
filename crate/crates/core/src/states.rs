//! Constructors for canonical Gaussian states and a seeded random generator.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};

use crate::gaussian::{
    apply, rotation2, validate, Covariance, Lemma1Factors, SingleModeCov, SymplecticSpectrum,
    SymplecticTransform, TwoModeCov,
};
use crate::matkit::{Dd, RealMatrix};
use crate::{Error, Result};

/// Largest accepted |squeezing| and mean photon number in a [`StateSpec`].
pub const MAX_SQUEEZE: f64 = 10.0;
pub const MAX_PHOTONS: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Vacuum,
    Thermal,
    SqueezedThermal,
    Tmsv,
    TmsThermal,
    StandardForm,
    Random,
}

impl StateKind {
    pub const ALL: [StateKind; 7] = [
        Self::Vacuum,
        Self::Thermal,
        Self::SqueezedThermal,
        Self::Tmsv,
        Self::TmsThermal,
        Self::StandardForm,
        Self::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Vacuum => "vacuum",
            Self::Thermal => "thermal",
            Self::SqueezedThermal => "squeezed_thermal",
            Self::Tmsv => "tmsv",
            Self::TmsThermal => "tms_thermal",
            Self::StandardForm => "standard_form",
            Self::Random => "random",
        }
    }

    fn single_mode_allowed(self) -> bool {
        matches!(self, Self::Vacuum | Self::Thermal | Self::SqueezedThermal)
    }
}

impl fmt::Display for StateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown state kind '{s}'")))
    }
}

/// Parameters of a canonical state. Unused fields are ignored by a kind.
///
/// `squeezed_thermal` applies `S_loc(r1, r2)` to a thermal state;
/// `tms_thermal` applies the two-mode squeezer to one. `random` draws from
/// [`random_valid`] with `seed`, `max_thermal` and `max_squeeze`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StateSpec {
    pub kind: StateKind,
    pub modes: u8,
    pub nbar1: f64,
    pub nbar2: f64,
    pub r: f64,
    pub r1: f64,
    pub r2: f64,
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
    pub seed: u64,
    pub max_thermal: f64,
    pub max_squeeze: f64,
}

impl Default for StateSpec {
    fn default() -> Self {
        Self {
            kind: StateKind::Vacuum,
            modes: 2,
            nbar1: 0.0,
            nbar2: 0.0,
            r: 0.0,
            r1: 0.0,
            r2: 0.0,
            a: 0.5,
            b: 0.5,
            c1: 0.0,
            c2: 0.0,
            seed: 0,
            max_thermal: 1.0,
            max_squeeze: 0.5,
        }
    }
}

impl StateSpec {
    pub fn new(kind: StateKind) -> Self {
        Self { kind, ..Self::default() }
    }
}

/// Output of [`make`]: single-mode kinds stay 2×2.
#[derive(Debug, Clone, PartialEq)]
pub enum GaussianCov {
    Single(SingleModeCov),
    Two(TwoModeCov),
}

impl GaussianCov {
    pub fn two_mode(&self) -> Option<&TwoModeCov> {
        match self {
            Self::Two(s) => Some(s),
            Self::Single(_) => None,
        }
    }

    pub fn into_two_mode(self) -> Result<TwoModeCov> {
        match self {
            Self::Two(s) => Ok(s),
            Self::Single(_) => Err(Error::UnsupportedState("single-mode state".into())),
        }
    }
}

impl Covariance for GaussianCov {
    fn matrix(&self) -> &RealMatrix {
        match self {
            Self::Single(s) => s.matrix(),
            Self::Two(s) => s.matrix(),
        }
    }
}

fn check(name: &str, v: f64, lo: f64, hi: f64) -> Result<()> {
    if v.is_finite() && (lo..=hi).contains(&v) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!("{name} = {v} outside [{lo}, {hi}]")))
    }
}

fn check_spec(spec: &StateSpec) -> Result<()> {
    if spec.modes != 1 && spec.modes != 2 {
        return Err(Error::OutOfRange(format!("modes = {} (must be 1 or 2)", spec.modes)));
    }
    if spec.modes == 1 && !spec.kind.single_mode_allowed() {
        return Err(Error::OutOfRange(format!("{} is a two-mode state", spec.kind)));
    }
    check("nbar1", spec.nbar1, 0.0, MAX_PHOTONS)?;
    check("nbar2", spec.nbar2, 0.0, MAX_PHOTONS)?;
    for (name, v) in [("r", spec.r), ("r1", spec.r1), ("r2", spec.r2)] {
        check(name, v, -MAX_SQUEEZE, MAX_SQUEEZE)?;
    }
    check("max_thermal", spec.max_thermal, 0.0, MAX_PHOTONS)?;
    check("max_squeeze", spec.max_squeeze, 0.0, MAX_SQUEEZE)?;
    for (name, v) in [("a", spec.a), ("b", spec.b)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::OutOfRange(format!("{name} = {v} must be positive")));
        }
    }
    for (name, v) in [("c1", spec.c1), ("c2", spec.c2)] {
        if !v.is_finite() {
            return Err(Error::OutOfRange(format!("{name} = {v} is not finite")));
        }
    }
    Ok(())
}

fn thermal_two(n1: f64, n2: f64) -> TwoModeCov {
    TwoModeCov::new(RealMatrix::from_diag(&[n1 + 0.5, n1 + 0.5, n2 + 0.5, n2 + 0.5]))
        .expect("thermal states are physical")
}

/// Two-mode squeezed vacuum in closed form, `a = cosh 2r / 2`, `c = sinh 2r / 2`.
///
/// `c` is taken as the double nearest to `√(a² − ¼)` for the rounded `a`, so
/// `Det σ` stays within about `c · ulp(c) / 2` of `1/16` for large `r`.
fn tmsv(r: f64) -> TwoModeCov {
    let a = (2.0 * r).cosh() / 2.0;
    let miss = |c: f64| {
        Dd::from(a).mul_f64(a).add(Dd::from(c).mul_f64(c).neg()).add(Dd::from(-0.25)).to_f64().abs()
    };
    let mut c = ((a - 0.5) * (a + 0.5)).sqrt();
    for _ in 0..4 {
        let best = [c.next_down(), c.next_up()]
            .into_iter()
            .filter(|x| *x >= 0.0 && miss(*x) < miss(c))
            .min_by(|x, y| miss(*x).total_cmp(&miss(*y)));
        match best {
            Some(b) => c = b,
            None => break,
        }
    }
    let c = c.copysign(r);
    TwoModeCov::from_rows([[a, 0.0, c, 0.0], [0.0, a, 0.0, -c], [c, 0.0, a, 0.0], [0.0, -c, 0.0, a]])
        .expect("two-mode squeezed vacuum is physical")
}

pub fn make(spec: &StateSpec) -> Result<GaussianCov> {
    check_spec(spec)?;
    if spec.modes == 1 {
        let v = spec.nbar1 + 0.5;
        let e = (2.0 * spec.r1).exp();
        let m = match spec.kind {
            StateKind::Vacuum => RealMatrix::from_diag(&[0.5, 0.5]),
            StateKind::Thermal => RealMatrix::from_diag(&[v, v]),
            _ => RealMatrix::from_diag(&[v * e, v / e]),
        };
        return SingleModeCov::new(m).map(GaussianCov::Single);
    }
    let sigma = match spec.kind {
        StateKind::Vacuum => TwoModeCov::vacuum(),
        StateKind::Thermal => thermal_two(spec.nbar1, spec.nbar2),
        StateKind::SqueezedThermal => apply(
            &SymplecticTransform::local_squeeze(spec.r1, spec.r2),
            &thermal_two(spec.nbar1, spec.nbar2),
        )?,
        StateKind::Tmsv => tmsv(spec.r),
        StateKind::TmsThermal => apply(
            &SymplecticTransform::tmsv_squeeze(spec.r),
            &thermal_two(spec.nbar1, spec.nbar2),
        )?,
        StateKind::StandardForm => TwoModeCov::standard(spec.a, spec.b, spec.c1, spec.c2)?,
        StateKind::Random => {
            let bounds = RandomBounds {
                max_thermal: spec.max_thermal,
                max_squeeze: spec.max_squeeze,
                rotations: true,
            };
            random_valid(&mut seeded_rng(spec.seed), &bounds)?.0
        }
    };
    Ok(GaussianCov::Two(sigma))
}

/// Sampling ranges for [`random_valid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomBounds {
    pub max_thermal: f64,
    pub max_squeeze: f64,
    /// When false every angle is zero.
    pub rotations: bool,
}

/// xoshiro256++ seeded through SplitMix64.
pub fn seeded_rng(seed: u64) -> Xoshiro256PlusPlus {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Uniform on `[0, 1)` from the top 53 bits of one 64-bit draw.
pub fn unit_f64(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn symmetric(rng: &mut impl RngCore, half_width: f64) -> f64 {
    half_width * (2.0 * unit_f64(rng) - 1.0)
}

fn angle(rng: &mut impl RngCore, rotations: bool) -> f64 {
    let u = unit_f64(rng);
    if rotations { TAU * u } else { 0.0 }
}

/// Draws `σ = Aᵀ ν A` with `A = S_loc(r1, r2) R(ξ) S_tm(r) R(η) S_l`.
///
/// Draw order: for each mode of `S_l = S1 ⊕ S2`, `Si = Q(θa) diag(eˢ, e⁻ˢ) Q(θb)`
/// as `(θa, s, θb)`; then `η, r, ξ, r1, r2`; then two photon numbers, sorted
/// into `n̄− ≤ n̄+`. Angles are uniform on `[0, 2π)`, squeezings on
/// `[−max_squeeze, max_squeeze]`, photon numbers on `[0, max_thermal]`.
pub fn random_valid(
    rng: &mut impl RngCore,
    bounds: &RandomBounds,
) -> Result<(TwoModeCov, Lemma1Factors, SymplecticSpectrum)> {
    check("max_thermal", bounds.max_thermal, 0.0, MAX_PHOTONS)?;
    check("max_squeeze", bounds.max_squeeze, 0.0, MAX_SQUEEZE)?;
    let m = bounds.max_squeeze;
    let mut local = || {
        let ta = angle(rng, bounds.rotations);
        let s = symmetric(rng, m);
        let tb = angle(rng, bounds.rotations);
        &(&rotation2(ta) * &RealMatrix::from_diag(&[s.exp(), (-s).exp()])) * &rotation2(tb)
    };
    let (s1, s2) = (local(), local());
    let s_l = SymplecticTransform::local(&s1, &s2)?;
    let eta = angle(rng, bounds.rotations);
    let r = symmetric(rng, m);
    let xi = angle(rng, bounds.rotations);
    let r1 = symmetric(rng, m);
    let r2 = symmetric(rng, m);
    let t1 = bounds.max_thermal * unit_f64(rng);
    let t2 = bounds.max_thermal * unit_f64(rng);
    let spectrum = SymplecticSpectrum { n_minus: t1.min(t2) + 0.5, n_plus: t1.max(t2) + 0.5 };
    let factors = Lemma1Factors { s_l, eta, xi, r, r1, r2 };
    let (lo, hi) = (spectrum.n_minus, spectrum.n_plus);
    let nu = RealMatrix::from_diag(&[lo, lo, hi, hi]);
    let sigma = factors.compose().matrix().congruence(&nu);
    let sigma = validate(&(&sigma + &sigma.transpose()).scale(0.5))?;
    Ok((sigma, factors, spectrum))
}
