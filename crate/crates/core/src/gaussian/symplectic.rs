use super::cov::{symplectic_form, validate, Covariance, TwoModeCov};
use crate::matkit::RealMatrix;
use crate::{tolerances, Error, Result};

/// `Q(φ) = [[cos φ, -sin φ], [sin φ, cos φ]]`.
pub fn rotation2(phi: f64) -> RealMatrix {
    let (s, c) = phi.sin_cos();
    RealMatrix::from_rows(&[[c, -s], [s, c]])
}

/// A 4×4 real matrix verified to satisfy `Sᵀ Ω S = Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticTransform {
    m: RealMatrix,
}

impl SymplecticTransform {
    /// Rejects matrices with `max |Sᵀ Ω S - Ω| > 1e-9 · max(1, ‖S‖²)`.
    pub fn new(m: RealMatrix) -> Result<Self> {
        if m.rows() != 4 || m.cols() != 4 {
            return Err(Error::Shape(format!("expected 4×4, got {}×{}", m.rows(), m.cols())));
        }
        if !m.is_finite() {
            return Err(Error::Shape("non-finite entries".into()));
        }
        let deviation = Self::deviation(&m);
        let scale = m.max_abs().powi(2).max(1.0);
        if deviation > tolerances::SYMPLECTIC * scale {
            return Err(Error::NotSymplectic { deviation });
        }
        Ok(Self { m })
    }

    /// `max |Sᵀ Ω S - Ω|`.
    pub fn deviation(m: &RealMatrix) -> f64 {
        let omega = symplectic_form(m.rows() / 2);
        (&m.congruence(&omega) - &omega).max_abs()
    }

    pub fn identity() -> Self {
        Self { m: RealMatrix::identity(4) }
    }

    pub fn matrix(&self) -> &RealMatrix {
        &self.m
    }

    /// Beamsplitter-type rotation mixing the modes:
    /// `[[cos φ I, sin φ I], [-sin φ I, cos φ I]]`.
    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        Self {
            m: RealMatrix::from_rows(&[
                [c, 0.0, s, 0.0],
                [0.0, c, 0.0, s],
                [-s, 0.0, c, 0.0],
                [0.0, -s, 0.0, c],
            ]),
        }
    }

    /// `diag(e^r1, e^-r1, e^r2, e^-r2)`.
    pub fn local_squeeze(r1: f64, r2: f64) -> Self {
        Self { m: RealMatrix::from_diag(&[r1.exp(), (-r1).exp(), r2.exp(), (-r2).exp()]) }
    }

    /// `diag(e^r, e^-r, e^-r, e^r)`: opposite local squeezing of the two modes.
    pub fn two_mode_squeeze(r: f64) -> Self {
        Self::local_squeeze(r, -r)
    }

    /// The two-mode squeezer that maps the vacuum to the two-mode squeezed
    /// vacuum, `R(π/4) S_tm(r) R(-π/4)`.
    pub fn tmsv_squeeze(r: f64) -> Self {
        let (ch, sh) = (r.cosh(), r.sinh());
        Self {
            m: RealMatrix::from_rows(&[
                [ch, 0.0, sh, 0.0],
                [0.0, ch, 0.0, -sh],
                [sh, 0.0, ch, 0.0],
                [0.0, -sh, 0.0, ch],
            ]),
        }
    }

    /// `S1 ⊕ S2` for single-mode 2×2 symplectic (unit determinant) blocks.
    pub fn local(s1: &RealMatrix, s2: &RealMatrix) -> Result<Self> {
        for s in [s1, s2] {
            if s.rows() != 2 || s.cols() != 2 {
                return Err(Error::Shape(format!("expected 2×2, got {}×{}", s.rows(), s.cols())));
            }
        }
        Self::new(s1.direct_sum(s2))
    }

    /// Matrix product `self · other`.
    pub fn then(&self, other: &SymplecticTransform) -> Self {
        Self { m: &self.m * &other.m }
    }

    /// `S⁻¹ = -Ω Sᵀ Ω`.
    pub fn inverse(&self) -> Self {
        let omega = symplectic_form(2);
        let m = &(&omega * &self.m.transpose()) * &omega;
        Self { m: m.scale(-1.0) }
    }

    /// Returns the local blocks when the off-diagonal blocks vanish exactly.
    pub fn local_blocks(&self) -> Option<(RealMatrix, RealMatrix)> {
        let zero = |r0, c0| self.m.submatrix(r0, c0, 2, 2).max_abs() == 0.0;
        (zero(0, 2) && zero(2, 0))
            .then(|| (self.m.submatrix(0, 0, 2, 2), self.m.submatrix(2, 2, 2, 2)))
    }
}

/// `σ → Sᵀ σ S`, revalidated.
pub fn apply(s: &SymplecticTransform, sigma: &TwoModeCov) -> Result<TwoModeCov> {
    let out = s.matrix().congruence(sigma.matrix());
    validate(&(&out + &out.transpose()).scale(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &RealMatrix, b: &RealMatrix, tol: f64) -> bool {
        (a - b).max_abs() <= tol
    }

    #[test]
    fn constructors_are_symplectic() {
        for s in [
            SymplecticTransform::rotation(0.37),
            SymplecticTransform::local_squeeze(0.4, -1.1),
            SymplecticTransform::two_mode_squeeze(0.8),
            SymplecticTransform::tmsv_squeeze(1.3),
        ] {
            assert!(SymplecticTransform::deviation(s.matrix()) < 1e-12);
            let id = s.then(&s.inverse());
            assert!(close(id.matrix(), &RealMatrix::identity(4), 1e-12));
        }
    }

    #[test]
    fn non_symplectic_is_rejected() {
        let m = RealMatrix::from_diag(&[2.0, 1.0, 1.0, 1.0]);
        assert!(matches!(SymplecticTransform::new(m), Err(Error::NotSymplectic { .. })));
        let bad = RealMatrix::from_diag(&[2.0, 2.0]);
        let id = RealMatrix::identity(2);
        assert!(matches!(SymplecticTransform::local(&bad, &id), Err(Error::NotSymplectic { .. })));
    }

    #[test]
    fn tmsv_squeeze_of_vacuum() {
        let r: f64 = 0.6;
        let out = apply(&SymplecticTransform::tmsv_squeeze(r), &TwoModeCov::vacuum()).unwrap();
        let (a, c) = ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
        let expected = TwoModeCov::standard(a, a, c, -c).unwrap();
        assert!(close(out.matrix(), expected.matrix(), 1e-14));
    }

    #[test]
    fn two_mode_squeeze_of_vacuum_is_local() {
        let r: f64 = 0.6;
        let out = apply(&SymplecticTransform::two_mode_squeeze(r), &TwoModeCov::vacuum()).unwrap();
        let e = (2.0 * r).exp() / 2.0;
        let expected = RealMatrix::from_diag(&[e, 0.25 / e, 0.25 / e, e]);
        assert!(close(out.matrix(), &expected, 1e-14));
    }

    #[test]
    fn local_blocks_split() {
        let s = SymplecticTransform::local(&rotation2(0.3), &rotation2(-1.0)).unwrap();
        let (a, b) = s.local_blocks().unwrap();
        assert_eq!(a, rotation2(0.3));
        assert_eq!(b, rotation2(-1.0));
        assert!(SymplecticTransform::rotation(0.2).local_blocks().is_none());
    }
}
