//! Entropic and entanglement measures of Gaussian states, in nats.

use serde::Serialize;

use crate::gaussian::{
    partial_transpose_spectrum, standard_form, symplectic_eigenvalues, Covariance,
    SingleModeCov, SymplecticSpectrum, TwoModeCov,
};
use crate::{tolerances, Error, Result};

/// `f(x) = (x+½) ln(x+½) − (x−½) ln(x−½)`, the entropy of a thermal mode with
/// symplectic eigenvalue `x`.
pub fn f_entropy(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.5 - tolerances::ENTROPY_DOMAIN {
        return Err(Error::Domain(format!("f(x) requires x ≥ 1/2, got {x}")));
    }
    let x = x.max(0.5);
    let lo = x - 0.5;
    let hi = x + 0.5;
    let tail = if lo < tolerances::ENTROPY_SINGULARITY { 0.0 } else { lo * lo.ln() };
    Ok(hi * hi.ln() - tail)
}

/// `μ = 1 / (2ⁿ √Det σ)`.
pub fn purity<C: Covariance + ?Sized>(sigma: &C) -> f64 {
    let n = sigma.modes() as i32;
    1.0 / (2f64.powi(n) * sigma.det().sqrt())
}

pub fn linear_entropy<C: Covariance + ?Sized>(sigma: &C) -> f64 {
    1.0 - purity(sigma)
}

pub fn von_neumann_single(sigma: &SingleModeCov) -> Result<f64> {
    f_entropy(sigma.symplectic_eigenvalue())
}

/// `S_V = f(n−) + f(n+)`.
pub fn von_neumann_two(sigma: &TwoModeCov) -> Result<f64> {
    entropy_of_spectrum(&symplectic_eigenvalues(sigma)?)
}

/// `f(n−) + f(n+)`. Eigenvalues within the validation slack below ½ count as ½.
pub fn entropy_of_spectrum(sp: &SymplecticSpectrum) -> Result<f64> {
    let lift = |x: f64| if x >= 0.5 - tolerances::HEISENBERG { x.max(0.5) } else { x };
    Ok(f_entropy(lift(sp.n_minus))? + f_entropy(lift(sp.n_plus))?)
}

/// `I = f(√Det α) + f(√Det β) − f(n−) − f(n+)`.
pub fn mutual_information(sigma: &TwoModeCov) -> Result<f64> {
    let inv = sigma.invariants();
    let local = f_entropy(inv.det_alpha.sqrt())? + f_entropy(inv.det_beta.sqrt())?;
    Ok(local - von_neumann_two(sigma)?)
}

/// Symplectic spectrum `(ñ−, ñ+)` of the partial transpose.
pub fn pt_spectrum(sigma: &TwoModeCov) -> Result<SymplecticSpectrum> {
    partial_transpose_spectrum(sigma)
}

/// PPT criterion `ñ− ≥ ½`, necessary and sufficient for two modes.
pub fn ppt_separable(sigma: &TwoModeCov) -> Result<bool> {
    Ok(pt_spectrum(sigma)?.n_minus >= 0.5 - tolerances::PPT)
}

/// `g(x)` of the symmetric-state entanglement of formation; zero for `x ≥ ½`.
pub fn g_eof(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("g(x) requires x > 0, got {x}")));
    }
    if x >= 0.5 {
        return Ok(0.0);
    }
    let p = (0.5 + x).powi(2) / (2.0 * x);
    let m = (0.5 - x).powi(2) / (2.0 * x);
    let tail = if m > 0.0 { m * m.ln() } else { 0.0 };
    Ok(p * p.ln() - tail)
}

/// `E_F = max{0, g(ñ−)}` for symmetric states (`a = b` in standard form).
pub fn eof_symmetric(sigma: &TwoModeCov) -> Result<f64> {
    let sf = standard_form(sigma)?;
    if !sf.is_symmetric() {
        return Err(Error::UnsupportedState(format!(
            "entanglement of formation needs a = b, got a = {}, b = {}",
            sf.a, sf.b
        )));
    }
    Ok(g_eof(pt_spectrum(sigma)?.n_minus)?.max(0.0))
}

/// `E_N = max{0, −ln 2ñ−}`.
pub fn log_negativity(sigma: &TwoModeCov) -> Result<f64> {
    Ok((-(2.0 * pt_spectrum(sigma)?.n_minus).ln()).max(0.0))
}

/// Every scalar measure of a two-mode state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeasureReport {
    pub purity: f64,
    pub linear_entropy: f64,
    pub von_neumann: f64,
    pub mutual_information: f64,
    pub n_minus: f64,
    pub n_plus: f64,
    pub nt_minus: f64,
    pub nt_plus: f64,
    pub separable: bool,
    pub eof: Option<f64>,
    pub log_negativity: f64,
}

impl MeasureReport {
    pub fn of(sigma: &TwoModeCov) -> Result<Self> {
        let sp = symplectic_eigenvalues(sigma)?;
        let pt = pt_spectrum(sigma)?;
        let mu = purity(sigma);
        let eof = match eof_symmetric(sigma) {
            Ok(e) => Some(e),
            Err(Error::UnsupportedState(_)) => None,
            Err(e) => return Err(e),
        };
        Ok(Self {
            purity: mu,
            linear_entropy: 1.0 - mu,
            von_neumann: entropy_of_spectrum(&sp)?,
            mutual_information: mutual_information(sigma)?,
            n_minus: sp.n_minus,
            n_plus: sp.n_plus,
            nt_minus: pt.n_minus,
            nt_plus: pt.n_plus,
            separable: pt.n_minus >= 0.5 - tolerances::PPT,
            eof,
            log_negativity: (-(2.0 * pt.n_minus).ln()).max(0.0),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matkit::RealMatrix;

    fn geometric_entropy(nbar: f64) -> f64 {
        let q = nbar / (1.0 + nbar);
        (0..2000)
            .map(|k| (1.0 - q) * q.powi(k))
            .filter(|&p| p > 0.0)
            .map(|p| -p * p.ln())
            .sum()
    }

    #[test]
    fn f_values() {
        assert_eq!(f_entropy(0.5).unwrap(), 0.0);
        assert!((f_entropy(1.5).unwrap() - 4f64.ln()).abs() < 1e-15);
        assert!((f_entropy(1.5).unwrap() - geometric_entropy(1.0)).abs() < 1e-12);
        assert!((f_entropy(0.8).unwrap() - geometric_entropy(0.3)).abs() < 1e-12);
        let x = 2f64.cosh() / 2.0;
        assert!((f_entropy(x).unwrap() - 1.61983).abs() < 1e-4);
        assert!(matches!(f_entropy(0.49), Err(Error::Domain(_))));
        assert_eq!(f_entropy(0.5 - 1e-13).unwrap(), 0.0);
    }

    #[test]
    fn purity_examples() {
        assert_eq!(purity(&TwoModeCov::vacuum()), 1.0);
        let t = TwoModeCov::new(RealMatrix::from_diag(&[1.5; 4])).unwrap();
        assert!((purity(&t) - 1.0 / 9.0).abs() < 1e-15);
        let s = TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap();
        assert!((purity(&s) - 0.13674).abs() < 1e-4);
        assert!((purity(&SingleModeCov::thermal(1.0).unwrap()) - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn single_mode_entropy_ignores_squeezing() {
        let e = std::f64::consts::E;
        let sq = SingleModeCov::new(RealMatrix::from_diag(&[1.5 * e * e, 1.5 / (e * e)])).unwrap();
        assert!((von_neumann_single(&sq).unwrap() - 4f64.ln()).abs() < 1e-12);
        assert_eq!(von_neumann_single(&SingleModeCov::vacuum()).unwrap(), 0.0);
    }

    #[test]
    fn two_mode_examples() {
        let s = TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap();
        assert!((von_neumann_two(&s).unwrap() - 2.5398).abs() < 1e-3);
        assert!((mutual_information(&s).unwrap() - 0.0975).abs() < 1e-3);
        let sym = TwoModeCov::standard(1.0, 1.0, 0.6, -0.6).unwrap();
        assert!((von_neumann_two(&sym).unwrap() - 1.40453).abs() < 1e-5);
        let (ch, sh) = (2f64.cosh() / 2.0, 2f64.sinh() / 2.0);
        let tmsv = TwoModeCov::standard(ch, ch, sh, -sh).unwrap();
        assert!(von_neumann_two(&tmsv).unwrap().abs() < 1e-6);
        assert!((mutual_information(&tmsv).unwrap() - 3.23966).abs() < 1e-4);
        let product = TwoModeCov::standard(2.0, 1.0, 0.0, 0.0).unwrap();
        assert!(mutual_information(&product).unwrap().abs() < 1e-14);
    }

    #[test]
    fn entanglement_examples() {
        let sym = TwoModeCov::standard(1.0, 1.0, 0.6, -0.6).unwrap();
        let pt = pt_spectrum(&sym).unwrap();
        assert!((pt.n_minus - 0.4).abs() < 1e-12 && (pt.n_plus - 1.6).abs() < 1e-12);
        assert!(!ppt_separable(&sym).unwrap());
        assert!((log_negativity(&sym).unwrap() - 0.8f64.ln().abs()).abs() < 1e-12);
        let (p, m) = (0.9f64.powi(2) / 0.8, 0.1f64.powi(2) / 0.8);
        let g = p * p.ln() - m * m.ln();
        assert!((eof_symmetric(&sym).unwrap() - g).abs() < 1e-14);
        assert!((g - 0.06735).abs() < 1e-5);

        assert!(ppt_separable(&TwoModeCov::vacuum()).unwrap());
        assert_eq!(log_negativity(&TwoModeCov::vacuum()).unwrap(), 0.0);
        assert_eq!(eof_symmetric(&TwoModeCov::vacuum()).unwrap(), 0.0);
        let s = TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap();
        assert!(matches!(eof_symmetric(&s), Err(Error::UnsupportedState(_))));
    }

    #[test]
    fn report_fields_are_consistent() {
        let r = MeasureReport::of(&TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap()).unwrap();
        assert_eq!(r.linear_entropy, 1.0 - r.purity);
        assert!(r.eof.is_none());
        assert_eq!(r.separable, r.log_negativity == 0.0);
    }
}
