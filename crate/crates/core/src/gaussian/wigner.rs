use super::cov::{Covariance, TwoModeCov};
use crate::Result;

/// `W(X) = exp(−½ Xᵀ σ⁻¹ X) / ((2π)² √Det σ)`, normalized to `∫ W d⁴X = 1`.
///
/// With this normalization the purity is `(2π)² ∫ W² d⁴X`.
pub fn wigner_at(sigma: &TwoModeCov, x: [f64; 4]) -> Result<f64> {
    let inv = sigma.matrix().inverse()?;
    let mut q = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            q += x[i] * inv[(i, j)] * x[j];
        }
    }
    let norm = (2.0 * std::f64::consts::PI).powi(2) * sigma.det().sqrt();
    Ok((-0.5 * q).exp() / norm)
}
