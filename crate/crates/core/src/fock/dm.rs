use super::ops::{quadratures, SparseOp};
use crate::matkit::{c64, hermitian_eigvals, ComplexMatrix, RealMatrix};
use crate::{tolerances, Error, Result};

/// A truncated density matrix of one or two modes.
#[derive(Debug, Clone)]
pub struct FockDm {
    cutoff: usize,
    modes: usize,
    rho: ComplexMatrix,
}

impl FockDm {
    /// Checks dimension `(N+1)^modes` and Hermiticity.
    pub fn new(rho: ComplexMatrix, cutoff: usize, modes: usize) -> Result<Self> {
        if !(1..=2).contains(&modes) || cutoff == 0 {
            return Err(Error::OutOfRange(format!("{modes} modes at cutoff {cutoff}")));
        }
        let dim = (cutoff + 1).pow(modes as u32);
        if rho.rows() != dim || rho.cols() != dim {
            return Err(Error::Shape(format!(
                "expected {dim}×{dim} for {modes} modes at cutoff {cutoff}, got {}×{}",
                rho.rows(),
                rho.cols()
            )));
        }
        let deviation = rho.hermitian_deviation();
        if deviation > tolerances::HERMITIAN {
            return Err(crate::matkit::LinalgError::NotHermitian { deviation }.into());
        }
        Ok(Self { cutoff, modes, rho })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(psi: &[crate::matkit::C64], cutoff: usize, modes: usize) -> Result<Self> {
        let n = psi.len();
        Self::new(ComplexMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj()), cutoff, modes)
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn dim(&self) -> usize {
        self.rho.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.rho
    }

    pub fn trace(&self) -> f64 {
        self.rho.trace().re
    }

    /// `1 − Tr ρ`: probability lost to the truncation.
    pub fn deficit(&self) -> f64 {
        1.0 - self.trace()
    }

    /// `ρ_A ⊗ ρ_B` for single-mode factors at the same cutoff.
    pub fn product(a: &FockDm, b: &FockDm) -> Result<Self> {
        if a.modes != 1 || b.modes != 1 || a.cutoff != b.cutoff {
            return Err(Error::Shape("product needs single-mode factors at equal cutoff".into()));
        }
        Self::new(a.rho.kron(&b.rho), a.cutoff, 2)
    }
}

/// `p_k = n̄ᵏ / (1+n̄)^{k+1}` for `k = 0..=N`, not renormalized.
pub fn thermal_weights(nbar: f64, cutoff: usize) -> Vec<f64> {
    let q = nbar / (1.0 + nbar);
    let mut p = Vec::with_capacity(cutoff + 1);
    let mut w = 1.0 / (1.0 + nbar);
    for _ in 0..=cutoff {
        p.push(w);
        w *= q;
    }
    p
}

/// Truncation deficit `(n̄/(1+n̄))^{N+1}` of a thermal state.
pub(crate) fn thermal_deficit(nbar: f64, cutoff: usize) -> f64 {
    (nbar / (1.0 + nbar)).powi(cutoff as i32 + 1)
}

pub(crate) fn check_thermal(nbar: f64, cutoff: usize, tolerance: f64) -> Result<()> {
    if !nbar.is_finite() || nbar < 0.0 {
        return Err(Error::OutOfRange(format!("mean photon number {nbar}")));
    }
    if cutoff == 0 {
        return Err(Error::OutOfRange("cutoff must be at least 1".into()));
    }
    let deficit = thermal_deficit(nbar, cutoff);
    if deficit > tolerance {
        return Err(Error::CutoffTooSmall { cutoff, deficit });
    }
    Ok(())
}

pub fn thermal_dm(nbar: f64, cutoff: usize) -> Result<FockDm> {
    thermal_dm_with_tolerance(nbar, cutoff, tolerances::FOCK_TRACE_DEFICIT)
}

/// As [`thermal_dm`] with a caller-chosen deficit bound (convergence studies).
pub fn thermal_dm_with_tolerance(nbar: f64, cutoff: usize, tolerance: f64) -> Result<FockDm> {
    check_thermal(nbar, cutoff, tolerance)?;
    let rho = ComplexMatrix::from_real_diag(&thermal_weights(nbar, cutoff));
    FockDm::new(rho, cutoff, 1)
}

fn eigenvalues(rho: &ComplexMatrix) -> Result<Vec<f64>> {
    if is_diagonal(rho) {
        return Ok((0..rho.rows()).map(|i| rho[(i, i)].re).collect());
    }
    Ok(hermitian_eigvals(rho)?)
}

fn is_diagonal(m: &ComplexMatrix) -> bool {
    let n = m.rows();
    let zero = c64(0.0, 0.0);
    (0..n).all(|i| (0..n).all(|j| i == j || m[(i, j)] == zero))
}

fn entropy_of_eigenvalues(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&l| l >= tolerances::FOCK_EIGEN_FLOOR)
        .map(|&l| -l * l.ln())
        .sum()
}

/// `−Tr ρ ln ρ` from the eigenvalues; eigenvalues below 1e−14 are dropped.
pub fn entropy_fock(rho: &FockDm) -> Result<f64> {
    Ok(entropy_of_eigenvalues(&eigenvalues(&rho.rho)?))
}

/// `Tr ρ² = ‖ρ‖_F²`.
pub fn purity_fock(rho: &FockDm) -> f64 {
    rho.rho.frobenius_norm().powi(2)
}

/// Reduced state of `keep` (0 or 1) of a two-mode density matrix.
pub fn partial_trace(rho: &FockDm, keep: usize) -> Result<FockDm> {
    if rho.modes != 2 || keep > 1 {
        return Err(Error::Shape(format!("partial trace keeping mode {keep} of a {}-mode state", rho.modes)));
    }
    let d = rho.cutoff + 1;
    let m = &rho.rho;
    let out = ComplexMatrix::from_fn(d, d, |i, j| {
        (0..d)
            .map(|t| if keep == 0 { m[(i * d + t, j * d + t)] } else { m[(t * d + i, t * d + j)] })
            .sum()
    });
    FockDm::new(out, rho.cutoff, 1)
}

/// `⟨k1 k2|ρ^{T₂}|l1 l2⟩ = ⟨k1 l2|ρ|l1 k2⟩`.
pub fn partial_transpose_fock(rho: &FockDm) -> Result<ComplexMatrix> {
    if rho.modes != 2 {
        return Err(Error::Shape("partial transpose needs two modes".into()));
    }
    let d = rho.cutoff + 1;
    let m = &rho.rho;
    Ok(ComplexMatrix::from_fn(d * d, d * d, |r, c| {
        let (k1, k2, l1, l2) = (r / d, r % d, c / d, c % d);
        m[(k1 * d + l2, l1 * d + k2)]
    }))
}

/// Sum of the magnitudes of the negative eigenvalues of `ρ^{T₂}`.
pub fn negativity_fock(rho: &FockDm) -> Result<f64> {
    let values = eigenvalues(&partial_transpose_fock(rho)?)?;
    Ok(values.iter().filter(|&&l| l < 0.0).map(|l| -l).sum())
}

/// `σ_ij = ½⟨X_i X_j + X_j X_i⟩ − ⟨X_i⟩⟨X_j⟩`, normalized by `Tr ρ`.
pub fn cov_from_fock(rho: &FockDm) -> RealMatrix {
    let q = quadratures(rho.cutoff, rho.modes);
    let n = q.len();
    let tr = rho.trace();
    let mean: Vec<f64> = q.iter().map(|x| x.expectation(&rho.rho).re / tr).collect();
    let mut sigma = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let second = SparseOp::trace_product(&rho.rho, &q[i], &q[j]).re / tr;
            let v = second - mean[i] * mean[j];
            sigma[(i, j)] = v;
            sigma[(j, i)] = v;
        }
    }
    sigma
}
