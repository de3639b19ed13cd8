use super::cov::{symplectic_form, Covariance, LocalInvariants, TwoModeCov};
use super::standard_form::standard_form_transform;
use crate::matkit::{c64, complex_eigvals, ComplexMatrix, RealMatrix};
use crate::{tolerances, Error, Result};

/// Symplectic eigenvalues `n− ≤ n+` of a two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymplecticSpectrum {
    pub n_minus: f64,
    pub n_plus: f64,
}

impl SymplecticSpectrum {
    /// Thermal photon numbers `n̄∓ = n∓ − 1/2`.
    pub fn thermal_photons(&self) -> (f64, f64) {
        (self.n_minus - 0.5, self.n_plus - 0.5)
    }

    pub fn is_physical(&self) -> bool {
        self.n_minus >= 0.5 - tolerances::HEISENBERG
    }

    pub fn is_pure(&self, tol: f64) -> bool {
        (self.n_minus - 0.5).abs() <= tol && (self.n_plus - 0.5).abs() <= tol
    }
}

/// `n∓ = √((Δ ∓ √(Δ² − 4 Det σ)) / 2)`.
///
/// `n−²` is taken as `Det σ / n+²` to avoid cancellation. Discriminants in
/// `[−1e−12·max(1, Δ²), 0)` are clamped to zero.
pub fn spectrum_from_invariants(delta: f64, det: f64) -> Result<SymplecticSpectrum> {
    if !delta.is_finite() || !det.is_finite() {
        return Err(Error::NumericalInconsistency("non-finite invariants".into()));
    }
    let mut disc = delta * delta - 4.0 * det;
    if disc < 0.0 {
        if disc < -tolerances::DISCRIMINANT * (delta * delta).max(1.0) {
            return Err(Error::NumericalInconsistency(format!(
                "Δ² − 4 Det σ = {disc:.3e} < 0 (Δ = {delta}, Det σ = {det})"
            )));
        }
        disc = 0.0;
    }
    let plus_sq = 0.5 * (delta + disc.sqrt());
    if plus_sq <= 0.0 {
        return Err(Error::NumericalInconsistency(format!("n+² = {plus_sq} is not positive")));
    }
    let minus_sq = det / plus_sq;
    if minus_sq < 0.0 {
        return Err(Error::NumericalInconsistency(format!("n−² = {minus_sq} is negative")));
    }
    Ok(SymplecticSpectrum { n_minus: minus_sq.sqrt(), n_plus: plus_sq.sqrt() })
}

/// Closed-form spectrum of any symmetric 4×4 matrix with positive
/// determinant, physical or not (e.g. a partial transpose).
pub fn spectrum_of_matrix(m: &RealMatrix) -> Result<SymplecticSpectrum> {
    if m.rows() != 4 || m.cols() != 4 {
        return Err(Error::Shape(format!("expected 4×4, got {}×{}", m.rows(), m.cols())));
    }
    let inv = LocalInvariants::of(m);
    spectrum_from_invariants(inv.delta(), inv.det_sigma)
}

/// `x·y − z·w` with a single rounding error (Kahan's fma trick).
fn diff_of_products(x: f64, y: f64, z: f64, w: f64) -> f64 {
    let zw = z * w;
    let err = (-z).mul_add(w, zw);
    x.mul_add(y, -zw) + err
}

/// Closed form on standard-form entries. Here
/// `Δ² − 4 Det σ = (a² − b²)² + 4 (a c1 + b c2)(b c1 + a c2)`, which keeps
/// degenerate spectra (pure and symmetric states) free of cancellation.
pub fn spectrum_of_standard_form(a: f64, b: f64, c1: f64, c2: f64) -> Result<SymplecticSpectrum> {
    let delta = a * a + b * b + 2.0 * c1 * c2;
    let det = diff_of_products(a, b, c1, c1) * diff_of_products(a, b, c2, c2);
    let split = (a - b) * (a + b);
    let mut disc = split * split + 4.0 * (a * c1 + b * c2) * (b * c1 + a * c2);
    if disc < 0.0 {
        if disc < -tolerances::DISCRIMINANT * (delta * delta).max(1.0) {
            return Err(Error::NumericalInconsistency(format!(
                "Δ² − 4 Det σ = {disc:.3e} < 0 for standard form ({a}, {b}, {c1}, {c2})"
            )));
        }
        disc = 0.0;
    }
    let plus_sq = 0.5 * (delta + disc.sqrt());
    if !(plus_sq > 0.0) || det < 0.0 {
        return Err(Error::NumericalInconsistency(format!(
            "standard form ({a}, {b}, {c1}, {c2}) has no real symplectic spectrum"
        )));
    }
    Ok(SymplecticSpectrum { n_minus: (det / plus_sq).sqrt(), n_plus: plus_sq.sqrt() })
}

/// `n∓ = √((Δ ∓ √(Δ² − 4 Det σ)) / 2)`, evaluated on the standard form of `σ`
/// (`Δ` and `Det σ` are local invariants).
pub fn symplectic_eigenvalues(sigma: &TwoModeCov) -> Result<SymplecticSpectrum> {
    let (a, b, c1, c2) = standard_entries(sigma)?;
    spectrum_of_standard_form(a, b, c1, c2)
}

/// `(ñ−, ñ+)`: the spectrum of `Λ σ Λ`, whose standard form is that of `σ`
/// with `c2 → −c2`.
pub fn partial_transpose_spectrum(sigma: &TwoModeCov) -> Result<SymplecticSpectrum> {
    let (a, b, c1, c2) = standard_entries(sigma)?;
    spectrum_of_standard_form(a, b, c1, -c2)
}

fn standard_entries(sigma: &TwoModeCov) -> Result<(f64, f64, f64, f64)> {
    let (_, sf) = standard_form_transform(sigma)?;
    let m = sf.matrix();
    Ok((m[(0, 0)], m[(2, 2)], m[(0, 2)], m[(1, 3)]))
}

/// Independent route: the eigenvalues of `iΩσ` are `±n−, ±n+`.
pub fn spectrum_oracle(sigma: &TwoModeCov) -> Result<SymplecticSpectrum> {
    oracle_of_matrix(sigma.matrix())
}

pub(crate) fn oracle_of_matrix(m: &RealMatrix) -> Result<SymplecticSpectrum> {
    let omega_sigma = &symplectic_form(2) * m;
    let i_omega_sigma = ComplexMatrix::from_fn(4, 4, |i, j| c64(0.0, omega_sigma[(i, j)]));
    let mut eig: Vec<f64> = complex_eigvals(&i_omega_sigma)?.iter().map(|z| z.re).collect();
    eig.sort_by(f64::total_cmp);
    let scale = eig[3].abs().max(1.0);
    let pairing = (eig[0] + eig[3]).abs().max((eig[1] + eig[2]).abs());
    if pairing > tolerances::SPECTRUM_PAIRING * scale {
        return Err(Error::NumericalInconsistency(format!(
            "eigenvalues of iΩσ are not ± paired (gap {pairing:.3e})"
        )));
    }
    let lo = 0.5 * (eig[2] - eig[1]);
    let hi = 0.5 * (eig[3] - eig[0]);
    Ok(SymplecticSpectrum { n_minus: lo.min(hi), n_plus: lo.max(hi) })
}

/// `Λ σ Λ` with `Λ = diag(1, 1, 1, −1)`: time reversal on mode 2.
pub fn partial_transpose(sigma: &TwoModeCov) -> RealMatrix {
    let mut m = sigma.matrix().clone();
    for k in 0..3 {
        m[(k, 3)] = -m[(k, 3)];
        m[(3, k)] = -m[(3, k)];
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_and_thermal() {
        for route in [symplectic_eigenvalues, spectrum_oracle] {
            let v = route(&TwoModeCov::vacuum()).unwrap();
            assert!((v.n_minus - 0.5).abs() < 1e-15 && (v.n_plus - 0.5).abs() < 1e-15);
            let t = TwoModeCov::new(RealMatrix::from_diag(&[1.5; 4])).unwrap();
            let s = route(&t).unwrap();
            assert!((s.n_minus - 1.5).abs() < 1e-12 && (s.n_plus - 1.5).abs() < 1e-12);
        }
    }

    #[test]
    fn standard_form_example() {
        let s = TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap();
        let closed = symplectic_eigenvalues(&s).unwrap();
        let oracle = spectrum_oracle(&s).unwrap();
        assert!((closed.n_minus - 0.93462).abs() < 1e-4);
        assert!((closed.n_plus - 1.95614).abs() < 1e-4);
        assert!((closed.n_minus - oracle.n_minus).abs() < 1e-10);
        assert!((closed.n_plus - oracle.n_plus).abs() < 1e-10);
    }

    #[test]
    fn symmetric_state_degenerate_spectrum() {
        let s = TwoModeCov::standard(1.0, 1.0, 0.6, -0.6).unwrap();
        let sp = symplectic_eigenvalues(&s).unwrap();
        assert!((sp.n_minus - 0.8).abs() < 1e-12 && (sp.n_plus - 0.8).abs() < 1e-12);
    }

    #[test]
    fn partial_transpose_flips_c2() {
        let s = TwoModeCov::standard(1.0, 1.0, 0.6, -0.6).unwrap();
        let pt = partial_transpose(&s);
        let expected = RealMatrix::from_rows(&[
            [1.0, 0.0, 0.6, 0.0],
            [0.0, 1.0, 0.0, 0.6],
            [0.6, 0.0, 1.0, 0.0],
            [0.0, 0.6, 0.0, 1.0],
        ]);
        assert_eq!(pt, expected);
        let sp = spectrum_of_matrix(&pt).unwrap();
        assert!((sp.n_minus - 0.4).abs() < 1e-12 && (sp.n_plus - 1.6).abs() < 1e-12);
        assert_eq!(&partial_transpose(&TwoModeCov::vacuum()), TwoModeCov::vacuum().matrix());
    }

    #[test]
    fn pure_states_are_exactly_degenerate() {
        for r in [0.25f64, 1.0, 3.0] {
            let (a, c) = ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
            let tmsv = TwoModeCov::standard(a, a, c, -c).unwrap();
            let sp = symplectic_eigenvalues(&tmsv).unwrap();
            let tol = 1e-13 * (a * a).max(1.0);
            assert!((sp.n_minus - 0.5).abs() < tol && (sp.n_plus - 0.5).abs() < tol, "{sp:?}");
            let pt = partial_transpose_spectrum(&tmsv).unwrap();
            assert!((pt.n_minus - (-2.0 * r).exp() / 2.0).abs() < 1e-10);
        }
    }

    #[test]
    fn standard_form_route_matches_invariants() {
        let s = TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap();
        let a = symplectic_eigenvalues(&s).unwrap();
        let b = spectrum_of_matrix(s.matrix()).unwrap();
        assert!((a.n_minus - b.n_minus).abs() < 1e-14 && (a.n_plus - b.n_plus).abs() < 1e-14);
    }

    #[test]
    fn negative_discriminant_is_reported() {
        assert!(matches!(
            spectrum_from_invariants(1.0, 1.0),
            Err(Error::NumericalInconsistency(_))
        ));
        let sp = spectrum_from_invariants(2.0, 1.0 + 1e-13).unwrap();
        assert!((sp.n_minus - 1.0).abs() < 1e-6);
    }
}
