use crate::matkit::{c64, hermitian_eigvals, ComplexMatrix, RealMatrix};
use crate::{tolerances, Error, Result};

/// Block-diagonal symplectic form `ω ⊕ … ⊕ ω`, `ω = [[0, 1], [-1, 0]]`.
pub fn symplectic_form(modes: usize) -> RealMatrix {
    let mut m = RealMatrix::zeros(2 * modes, 2 * modes);
    for k in 0..modes {
        m[(2 * k, 2 * k + 1)] = 1.0;
        m[(2 * k + 1, 2 * k)] = -1.0;
    }
    m
}

/// Smallest eigenvalue of the Hermitian matrix `m + iΩ/2`.
pub fn uncertainty_min_eigenvalue(m: &RealMatrix) -> Result<f64> {
    let n = m.rows();
    if !n.is_multiple_of(2) || !m.is_square() {
        return Err(Error::Shape(format!("{}×{} is not a phase-space matrix", m.rows(), m.cols())));
    }
    let omega = symplectic_form(n / 2);
    let h = ComplexMatrix::from_fn(n, n, |i, j| {
        c64(0.5 * (m[(i, j)] + m[(j, i)]), 0.5 * omega[(i, j)])
    });
    Ok(hermitian_eigvals(&h)?[0])
}

/// Common view of a validated covariance matrix.
pub trait Covariance {
    fn matrix(&self) -> &RealMatrix;

    fn modes(&self) -> usize {
        self.matrix().rows() / 2
    }

    fn det(&self) -> f64 {
        self.matrix().det().expect("covariance matrices are square")
    }
}

fn check_matrix(m: &RealMatrix, n: usize) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::Shape(format!("expected {n}×{n}, got {}×{}", m.rows(), m.cols())));
    }
    if !m.is_finite() {
        return Err(Error::Shape("non-finite entries".into()));
    }
    let asym = m.asymmetry();
    if asym > tolerances::SYMMETRY * m.max_abs().max(1.0) {
        return Err(Error::Shape(format!("not symmetric (max |m - mᵀ| = {asym:.3e})")));
    }
    Ok(())
}

fn check_physical(m: &RealMatrix) -> Result<()> {
    let min_eigenvalue = uncertainty_min_eigenvalue(m)?;
    if min_eigenvalue < -tolerances::HEISENBERG {
        return Err(Error::Unphysical { min_eigenvalue });
    }
    let sym = ComplexMatrix::from_fn(m.rows(), m.cols(), |i, j| c64(m[(i, j)], 0.0));
    if hermitian_eigvals(&sym)?[0] <= 0.0 {
        return Err(Error::Unphysical { min_eigenvalue });
    }
    Ok(())
}

fn symmetrized(m: &RealMatrix) -> RealMatrix {
    let t = m.transpose();
    (m + &t).scale(0.5)
}

/// A validated bona fide two-mode covariance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoModeCov {
    m: RealMatrix,
}

/// Accepts `m` iff it is a 4×4 symmetric, positive definite matrix with
/// `σ + iΩ/2 ≥ 0` (up to [`tolerances::HEISENBERG`]).
pub fn validate(m: &RealMatrix) -> Result<TwoModeCov> {
    check_matrix(m, 4)?;
    check_physical(m)?;
    Ok(TwoModeCov { m: symmetrized(m) })
}

impl TwoModeCov {
    pub fn new(m: RealMatrix) -> Result<Self> {
        validate(&m)
    }

    pub fn from_rows(rows: [[f64; 4]; 4]) -> Result<Self> {
        validate(&RealMatrix::from_rows(&rows))
    }

    pub fn vacuum() -> Self {
        Self { m: RealMatrix::from_diag(&[0.5; 4]) }
    }

    /// Standard-form matrix with the given entries.
    pub fn standard(a: f64, b: f64, c1: f64, c2: f64) -> Result<Self> {
        Self::from_rows([
            [a, 0.0, c1, 0.0],
            [0.0, a, 0.0, c2],
            [c1, 0.0, b, 0.0],
            [0.0, c2, 0.0, b],
        ])
    }

    pub fn into_matrix(self) -> RealMatrix {
        self.m
    }

    pub fn blocks(&self) -> Blocks {
        Blocks::of(&self.m)
    }

    pub fn invariants(&self) -> LocalInvariants {
        LocalInvariants::of(&self.m)
    }

    /// `Δ = Det α + Det β + 2 Det γ`.
    pub fn delta(&self) -> f64 {
        self.invariants().delta()
    }

    /// Reduced single-mode state of mode 0 or 1.
    pub fn reduced(&self, mode: usize) -> SingleModeCov {
        assert!(mode < 2, "two-mode state has modes 0 and 1");
        SingleModeCov { m: self.m.submatrix(2 * mode, 2 * mode, 2, 2) }
    }
}

impl Covariance for TwoModeCov {
    fn matrix(&self) -> &RealMatrix {
        &self.m
    }
}

/// A validated single-mode covariance matrix (`Det σ ≥ 1/4`).
#[derive(Debug, Clone, PartialEq)]
pub struct SingleModeCov {
    m: RealMatrix,
}

pub fn validate_single(m: &RealMatrix) -> Result<SingleModeCov> {
    check_matrix(m, 2)?;
    check_physical(m)?;
    Ok(SingleModeCov { m: symmetrized(m) })
}

impl SingleModeCov {
    pub fn new(m: RealMatrix) -> Result<Self> {
        validate_single(&m)
    }

    pub fn vacuum() -> Self {
        Self { m: RealMatrix::from_diag(&[0.5, 0.5]) }
    }

    pub fn thermal(nbar: f64) -> Result<Self> {
        validate_single(&RealMatrix::from_diag(&[nbar + 0.5, nbar + 0.5]))
    }

    /// Symplectic eigenvalue `√Det σ`.
    pub fn symplectic_eigenvalue(&self) -> f64 {
        self.det().max(0.0).sqrt()
    }
}

impl Covariance for SingleModeCov {
    fn matrix(&self) -> &RealMatrix {
        &self.m
    }
}

/// The 2×2 submatrices of a two-mode covariance matrix: `α`, `β`, `γ` of the
/// block form and the position/momentum minors `δ` (rows/cols x1, x2) and
/// `ε` (rows/cols p1, p2).
#[derive(Debug, Clone, PartialEq)]
pub struct Blocks {
    pub alpha: RealMatrix,
    pub beta: RealMatrix,
    pub gamma: RealMatrix,
    pub delta: RealMatrix,
    pub epsilon: RealMatrix,
}

impl Blocks {
    pub fn of(m: &RealMatrix) -> Self {
        Self {
            alpha: m.submatrix(0, 0, 2, 2),
            beta: m.submatrix(2, 2, 2, 2),
            gamma: m.submatrix(0, 2, 2, 2),
            delta: m.select(&[0, 2]),
            epsilon: m.select(&[1, 3]),
        }
    }
}

/// The four local symplectic invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalInvariants {
    pub det_alpha: f64,
    pub det_beta: f64,
    pub det_gamma: f64,
    pub det_sigma: f64,
}

impl LocalInvariants {
    pub fn of(m: &RealMatrix) -> Self {
        let b = Blocks::of(m);
        let det = |x: &RealMatrix| x.det().expect("2×2 block");
        Self {
            det_alpha: det(&b.alpha),
            det_beta: det(&b.beta),
            det_gamma: det(&b.gamma),
            det_sigma: m.det().expect("square"),
        }
    }

    pub fn delta(&self) -> f64 {
        self.det_alpha + self.det_beta + 2.0 * self.det_gamma
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_saturates_uncertainty() {
        let v = RealMatrix::from_diag(&[0.5; 4]);
        assert!(uncertainty_min_eigenvalue(&v).unwrap().abs() < 1e-12);
        assert!(validate(&v).is_ok());
    }

    #[test]
    fn sub_vacuum_mode_is_rejected_with_eigenvalue() {
        let m = RealMatrix::from_diag(&[0.25, 0.25, 0.5, 0.5]);
        match validate(&m) {
            Err(Error::Unphysical { min_eigenvalue }) => {
                assert!((min_eigenvalue + 0.25).abs() < 1e-12)
            }
            other => panic!("expected unphysical, got {other:?}"),
        }
    }

    #[test]
    fn asymmetric_is_shape_error() {
        let mut m = RealMatrix::from_diag(&[1.0; 4]);
        m[(0, 3)] = 0.1;
        assert!(matches!(validate(&m), Err(Error::Shape(_))));
        assert!(matches!(validate(&RealMatrix::identity(3)), Err(Error::Shape(_))));
    }

    #[test]
    fn standard_form_example_is_accepted() {
        assert!(TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).is_ok());
    }

    #[test]
    fn blocks_of_vacuum_and_standard_form() {
        let b = TwoModeCov::vacuum().blocks();
        let half = RealMatrix::from_diag(&[0.5, 0.5]);
        assert_eq!(b.alpha, half);
        assert_eq!(b.beta, half);
        assert_eq!(b.gamma, RealMatrix::zeros(2, 2));
        assert_eq!(b.delta, half);
        assert_eq!(b.epsilon, half);

        let (a, bb, c1, c2) = (2.0, 1.0, 0.5, -0.3);
        let sf = TwoModeCov::standard(a, bb, c1, c2).unwrap().blocks();
        assert_eq!(sf.gamma, RealMatrix::from_diag(&[c1, c2]));
        assert_eq!(sf.delta, RealMatrix::from_rows(&[[a, c1], [c1, bb]]));
        assert_eq!(sf.epsilon, RealMatrix::from_rows(&[[a, c2], [c2, bb]]));
    }

    #[test]
    fn delta_invariant_examples() {
        assert_eq!(TwoModeCov::vacuum().delta(), 0.5);
        let d = TwoModeCov::standard(2.0, 1.0, 0.5, -0.3).unwrap().delta();
        assert!((d - 4.7).abs() < 1e-14);
        for r in [0.1f64, 0.7, 1.5] {
            let (a, c) = ((2.0 * r).cosh() / 2.0, (2.0 * r).sinh() / 2.0);
            let tmsv = TwoModeCov::standard(a, a, c, -c).unwrap();
            assert!((tmsv.delta() - 0.5).abs() < 1e-12 * a * a);
        }
    }

    #[test]
    fn single_mode_validation() {
        assert!(SingleModeCov::thermal(1.0).is_ok());
        assert!(matches!(
            validate_single(&RealMatrix::from_diag(&[0.3, 0.5])),
            Err(Error::Unphysical { .. })
        ));
        let sq = RealMatrix::from_diag(&[0.5 * 2f64.exp(), 0.5 * (-2f64).exp()]);
        let s = validate_single(&sq).unwrap();
        assert!((s.symplectic_eigenvalue() - 0.5).abs() < 1e-15);
    }
}
