//! The flat analysis report.

use serde::{Deserialize, Serialize};
use twomode::gaussian::{
    standard_form_transform, symplectic_eigenvalues, Covariance, SingleModeCov, TwoModeCov,
};
use twomode::measures::{linear_entropy, purity, von_neumann_single, MeasureReport};
use twomode::tolerances;
use twomode::states::GaussianCov;

use crate::error::CliError;
use crate::format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Unit {
    #[default]
    Nats,
    Bits,
}

impl Unit {
    pub fn name(self) -> &'static str {
        match self {
            Self::Nats => "nats",
            Self::Bits => "bits",
        }
    }

    pub fn scale(self, x: f64) -> f64 {
        match self {
            Self::Nats => x,
            Self::Bits => x / std::f64::consts::LN_2,
        }
    }
}

/// Every measure, the standard form and the local invariants of one state.
/// Entropic quantities (`von_neumann`, `mutual_information`, `eof`,
/// `log_negativity`) are in `entropy_unit`. Two-mode-only fields are absent
/// for single-mode input.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub modes: u8,
    pub entropy_unit: String,
    pub pure: bool,
    pub purity: f64,
    pub linear_entropy: f64,
    pub von_neumann: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mutual_information: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic_eigenvalue: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_minus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_plus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nt_minus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nt_plus: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub separable: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetric: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eof: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_negativity: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sf_a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sf_b: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sf_c1: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sf_c2: Option<f64>,
    pub det_sigma: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_gamma: Option<f64>,
}

/// Purity criterion tolerance on `|n∓ − ½|`.
const PURE: f64 = 1e-9;

impl Report {
    pub fn of(sigma: &GaussianCov, label: Option<String>, unit: Unit) -> Result<Self, CliError> {
        match sigma {
            GaussianCov::Single(s) => Self::single(s, label, unit),
            GaussianCov::Two(s) => Self::two(s, label, unit),
        }
    }

    fn single(s: &SingleModeCov, label: Option<String>, unit: Unit) -> Result<Self, CliError> {
        let nu = s.symplectic_eigenvalue();
        Ok(Self {
            label,
            modes: 1,
            entropy_unit: unit.name().into(),
            pure: (nu - 0.5).abs() <= PURE,
            purity: purity(s),
            linear_entropy: linear_entropy(s),
            von_neumann: unit.scale(von_neumann_single(s)?),
            mutual_information: None,
            symplectic_eigenvalue: Some(nu),
            n_minus: None,
            n_plus: None,
            nt_minus: None,
            nt_plus: None,
            separable: None,
            symmetric: None,
            eof: None,
            log_negativity: None,
            sf_a: None,
            sf_b: None,
            sf_c1: None,
            sf_c2: None,
            det_sigma: s.det(),
            delta: None,
            det_alpha: None,
            det_beta: None,
            det_gamma: None,
        })
    }

    fn two(s: &TwoModeCov, label: Option<String>, unit: Unit) -> Result<Self, CliError> {
        let m = MeasureReport::of(s)?;
        // The reduced matrix keeps small c1, c2 accurate; the invariant-root
        // route loses half the digits as c → 0.
        let (_, sf) = standard_form_transform(s)?;
        let sf = sf.matrix();
        let (a, b, c1, c2) = (sf[(0, 0)], sf[(2, 2)], sf[(0, 2)], sf[(1, 3)]);
        let inv = s.invariants();
        let sp = symplectic_eigenvalues(s)?;
        Ok(Self {
            label,
            modes: 2,
            entropy_unit: unit.name().into(),
            pure: sp.is_pure(PURE),
            purity: m.purity,
            linear_entropy: m.linear_entropy,
            von_neumann: unit.scale(m.von_neumann),
            mutual_information: Some(unit.scale(m.mutual_information)),
            symplectic_eigenvalue: None,
            n_minus: Some(m.n_minus),
            n_plus: Some(m.n_plus),
            nt_minus: Some(m.nt_minus),
            nt_plus: Some(m.nt_plus),
            separable: Some(m.separable),
            symmetric: Some((a - b).abs() <= tolerances::SYMMETRIC_STATE),
            eof: m.eof.map(|e| unit.scale(e)),
            log_negativity: Some(unit.scale(m.log_negativity)),
            sf_a: Some(a),
            sf_b: Some(b),
            sf_c1: Some(c1),
            sf_c2: Some(c2),
            det_sigma: inv.det_sigma,
            delta: Some(inv.delta()),
            det_alpha: Some(inv.det_alpha),
            det_beta: Some(inv.det_beta),
            det_gamma: Some(inv.det_gamma),
        })
    }

    pub fn render(&self, digits: usize) -> String {
        format::to_text(self, digits)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Malformed(e.to_string()))
    }
}
