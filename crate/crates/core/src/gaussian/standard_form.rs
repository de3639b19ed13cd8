use super::cov::{validate, Covariance, TwoModeCov};
use super::symplectic::{rotation2, SymplecticTransform};
use crate::matkit::{symmetric_eig2, RealMatrix};
use crate::{tolerances, Error, Result};

/// The four standard-form entries `(a, b, c1, c2)` with `c1 ≥ |c2|`, `c1 ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardFormParams {
    pub a: f64,
    pub b: f64,
    pub c1: f64,
    pub c2: f64,
}

impl StandardFormParams {
    pub fn to_cov(&self) -> Result<TwoModeCov> {
        TwoModeCov::standard(self.a, self.b, self.c1, self.c2)
    }

    pub fn is_symmetric(&self) -> bool {
        (self.a - self.b).abs() <= tolerances::SYMMETRIC_STATE
    }
}

/// Standard-form entries recovered from the local invariants alone.
pub fn standard_form(sigma: &TwoModeCov) -> Result<StandardFormParams> {
    let inv = sigma.invariants();
    let a = inv.det_alpha.sqrt();
    let b = inv.det_beta.sqrt();
    let i3 = inv.det_gamma;
    let ab = a * b;
    let s = (ab * ab + i3 * i3 - inv.det_sigma) / ab;
    let mut disc = s * s - 4.0 * i3 * i3;
    if disc < 0.0 {
        if disc < -tolerances::STANDARD_FORM_DISCRIMINANT * (s * s).max(1.0) {
            return Err(Error::InvariantInconsistency(format!(
                "c² roots are complex (discriminant {disc:.3e})"
            )));
        }
        disc = 0.0;
    }
    let large = 0.5 * (s + disc.sqrt());
    if large < 0.0 {
        return Err(Error::InvariantInconsistency(format!("negative c² root {large:.3e}")));
    }
    let small = if large > 0.0 { i3 * i3 / large } else { 0.0 };
    Ok(StandardFormParams {
        a,
        b,
        c1: large.sqrt(),
        c2: i3.signum() * small.sqrt(),
    })
}

/// Closed-form SVD of a real 2×2 matrix: `m = Q(φ) diag(sx, sy) Q(θ)` with
/// `sx ≥ |sy|`, `sx ≥ 0`. Returns `(φ, sx, sy, θ)`.
pub fn svd2(m: &RealMatrix) -> (f64, f64, f64, f64) {
    let e = 0.5 * (m[(0, 0)] + m[(1, 1)]);
    let f = 0.5 * (m[(0, 0)] - m[(1, 1)]);
    let g = 0.5 * (m[(1, 0)] + m[(0, 1)]);
    let h = 0.5 * (m[(1, 0)] - m[(0, 1)]);
    let q = e.hypot(h);
    let r = f.hypot(g);
    let a1 = g.atan2(f);
    let a2 = h.atan2(e);
    (0.5 * (a2 + a1), q + r, q - r, 0.5 * (a2 - a1))
}

/// Per-mode map `L` with `Lᵀ m L = √(Det m) I` for a 2×2 positive block.
fn normalize_mode(m: &RealMatrix) -> RealMatrix {
    let (l1, l2, theta) = symmetric_eig2(m[(0, 0)], m[(0, 1)], m[(1, 1)]);
    let s = (l1 * l2).sqrt();
    &rotation2(theta) * &RealMatrix::from_diag(&[(s / l1).sqrt(), (s / l2).sqrt()])
}

/// Local symplectic `T = T1 ⊕ T2` with `Tᵀ σ T` in standard form.
///
/// The second tuple entry is the transformed matrix itself; its entries agree
/// with [`standard_form`] up to rounding.
pub fn standard_form_transform(sigma: &TwoModeCov) -> Result<(SymplecticTransform, TwoModeCov)> {
    let blocks = sigma.blocks();
    let l1 = normalize_mode(&blocks.alpha);
    let l2 = normalize_mode(&blocks.beta);
    let gamma = &(&l1.transpose() * &blocks.gamma) * &l2;
    let (phi, _, _, theta) = svd2(&gamma);
    let t1 = &l1 * &rotation2(phi);
    let t2 = &l2 * &rotation2(-theta);
    let t = SymplecticTransform::local(&t1, &t2)?;
    let out = t.matrix().congruence(sigma.matrix());
    let mut clean = RealMatrix::zeros(4, 4);
    for (i, j) in [(0, 0), (1, 1), (2, 2), (3, 3), (0, 2), (2, 0), (1, 3), (3, 1)] {
        clean[(i, j)] = out[(i, j)];
    }
    let a = 0.5 * (clean[(0, 0)] + clean[(1, 1)]);
    let b = 0.5 * (clean[(2, 2)] + clean[(3, 3)]);
    let off = (&out - &clean).max_abs();
    let spread = (out[(0, 0)] - out[(1, 1)]).abs().max((out[(2, 2)] - out[(3, 3)]).abs());
    if off.max(spread) > 1e-8 * out.max_abs().max(1.0) {
        return Err(Error::InvariantInconsistency(format!(
            "standard-form reduction left residual {:.3e}",
            off.max(spread)
        )));
    }
    for (k, v) in [(0, a), (1, a), (2, b), (3, b)] {
        clean[(k, k)] = v;
    }
    Ok((t, validate(&clean)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params_close(p: StandardFormParams, q: (f64, f64, f64, f64), tol: f64) -> bool {
        (p.a - q.0).abs() <= tol
            && (p.b - q.1).abs() <= tol
            && (p.c1 - q.2).abs() <= tol
            && (p.c2 - q.3).abs() <= tol
    }

    #[test]
    fn fixed_points() {
        let v = standard_form(&TwoModeCov::vacuum()).unwrap();
        assert!(params_close(v, (0.5, 0.5, 0.0, 0.0), 1e-15));
        let s = TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap();
        assert!(params_close(standard_form(&s).unwrap(), (2.0, 1.0, 0.5, -0.3), 1e-12));
    }

    #[test]
    fn svd2_reconstructs() {
        let m = RealMatrix::from_rows(&[[0.3, -1.2], [0.7, 0.4]]);
        let (phi, sx, sy, theta) = svd2(&m);
        let rec = &(&rotation2(phi) * &RealMatrix::from_diag(&[sx, sy])) * &rotation2(theta);
        assert!((&rec - &m).max_abs() < 1e-14);
        assert!(sx >= sy.abs());
        let d = m.det().unwrap();
        assert!((sx * sy - d).abs() < 1e-14);
    }

    #[test]
    fn local_squeeze_is_undone() {
        let e = std::f64::consts::E;
        let m = RealMatrix::from_diag(&[e / 2.0, 0.5 / e, 0.5, 0.5]);
        let sigma = TwoModeCov::new(m).unwrap();
        let (t, sf) = standard_form_transform(&sigma).unwrap();
        assert!((sf.matrix() - &RealMatrix::from_diag(&[0.5; 4])).max_abs() < 1e-14);
        assert!((t.matrix()[(0, 0)] - (-0.5f64).exp()).abs() < 1e-14);
        let (t, sf) = standard_form_transform(&TwoModeCov::vacuum()).unwrap();
        assert_eq!(t.matrix(), &RealMatrix::identity(4));
        assert_eq!(sf, TwoModeCov::vacuum());
    }

    #[test]
    fn transform_matches_closed_form() {
        let base = TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap();
        let s1 = &(&rotation2(0.4) * &RealMatrix::from_diag(&[1.3, 1.0 / 1.3])) * &rotation2(-1.1);
        let s2 = &(&rotation2(2.0) * &RealMatrix::from_diag(&[0.6, 1.0 / 0.6])) * &rotation2(0.3);
        let s = SymplecticTransform::local(&s1, &s2).unwrap();
        let sigma = super::super::apply(&s, &base).unwrap();
        let p = standard_form(&sigma).unwrap();
        assert!(params_close(p, (2.0, 1.0, 0.5, -0.3), 1e-8));
        let (_, sf) = standard_form_transform(&sigma).unwrap();
        let m = sf.matrix();
        assert!(params_close(p, (m[(0, 0)], m[(2, 2)], m[(0, 2)], m[(1, 3)]), 1e-8));
    }
}
