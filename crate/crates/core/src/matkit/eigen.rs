//! Hermitian eigensolvers.
//!
//! Two independent routes: cyclic complex Jacobi (used for small matrices and
//! kept as a cross-check) and Householder tridiagonalization followed by
//! implicit QL with Wilkinson shifts (used for everything larger).

use super::{c64, ComplexMatrix, LinalgError, LinalgResult, RealMatrix, C64};
use crate::tolerances;

/// Matrices up to this dimension go through the Jacobi route.
const JACOBI_MAX_DIM: usize = 8;
const JACOBI_MAX_SWEEPS: usize = 100;
const QL_MAX_ITER: usize = 60;

/// Eigen-decomposition of a Hermitian matrix. `vectors` holds the unit
/// eigenvectors as columns, in the same (ascending) order as `values`.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut vl = self.vectors.clone();
        for i in 0..n {
            for j in 0..n {
                vl[(i, j)] *= self.values[j];
            }
        }
        &vl * &self.vectors.adjoint()
    }
}

fn checked_hermitian(m: &ComplexMatrix) -> LinalgResult<ComplexMatrix> {
    if !m.is_square() {
        return Err(LinalgError::Dimension(format!(
            "eigen-decomposition of a non-square {}×{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let deviation = m.hermitian_deviation();
    if deviation > tolerances::HERMITIAN * m.max_abs().max(1.0) {
        return Err(LinalgError::NotHermitian { deviation });
    }
    let n = m.rows();
    // Symmetrize so that rounding asymmetries do not leak into the result.
    Ok(ComplexMatrix::from_fn(n, n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5))
}

/// Eigenvalues (ascending) and eigenvectors of a Hermitian matrix.
pub fn hermitian_eig(m: &ComplexMatrix) -> LinalgResult<HermitianEigen> {
    let a = checked_hermitian(m)?;
    if a.rows() <= JACOBI_MAX_DIM {
        jacobi(a, true).map(|(values, vectors)| HermitianEigen { values, vectors: vectors.unwrap() })
    } else {
        householder_ql(a, true)
            .map(|(values, vectors)| HermitianEigen { values, vectors: vectors.unwrap() })
    }
}

/// Eigenvalues only, ascending. Skips all eigenvector accumulation.
pub fn hermitian_eigvals(m: &ComplexMatrix) -> LinalgResult<Vec<f64>> {
    let a = checked_hermitian(m)?;
    if a.rows() <= JACOBI_MAX_DIM {
        jacobi(a, false).map(|(v, _)| v)
    } else {
        householder_ql(a, false).map(|(v, _)| v)
    }
}

/// Cyclic Jacobi at any size.
pub fn hermitian_eig_jacobi(m: &ComplexMatrix) -> LinalgResult<HermitianEigen> {
    let a = checked_hermitian(m)?;
    jacobi(a, true).map(|(values, vectors)| HermitianEigen { values, vectors: vectors.unwrap() })
}

/// Closed-form eigen-decomposition of the real symmetric matrix
/// `[[p, q], [q, r]]`.
///
/// Returns `(λ1, λ2, θ)` with the rotation angle `|θ| ≤ π/4` such that
/// `Q(θ)ᵀ M Q(θ) = diag(λ1, λ2)`, `Q(θ) = [[cos θ, -sin θ], [sin θ, cos θ]]`.
/// Diagonal input returns `θ = 0` and the diagonal unchanged.
pub fn symmetric_eig2(p: f64, q: f64, r: f64) -> (f64, f64, f64) {
    if q == 0.0 {
        return (p, r, 0.0);
    }
    let tau = (r - p) / (2.0 * q);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    // Q(θ) has columns (c, s) and (-s, c); with tan θ = -t this zeroes q.
    let theta = -t.atan();
    (p - t * q, r + t * q, theta)
}

fn sort_eigenpairs(values: Vec<f64>, vectors: Option<ComplexMatrix>) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let sorted: Vec<f64> = order.iter().map(|&i| values[i]).collect();
    let vectors = vectors.map(|v| ComplexMatrix::from_fn(n, n, |r, c| v[(r, order[c])]));
    (sorted, vectors)
}

fn jacobi(mut a: ComplexMatrix, want_vectors: bool) -> LinalgResult<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.rows();
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n));
    let total: f64 = a.frobenius_norm().powi(2);
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)].norm_sqr())
            .sum();
        if off <= (f64::EPSILON * f64::EPSILON) * total || off == 0.0 {
            let values = (0..n).map(|i| a[(i, i)].re).collect();
            return Ok(sort_eigenpairs(values, v));
        }
        for p in 0..n {
            for q in p + 1..n {
                let beta = a[(p, q)];
                let mag = beta.norm();
                if mag <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = beta / mag; // e^{iφ}
                let (alpha, gamma) = (a[(p, p)].re, a[(q, q)].re);
                let tau = (gamma - alpha) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let ph_conj = phase.conj();
                // G = [[c, s], [-s e^{-iφ}, c e^{-iφ}]] on the (p, q) plane; A ← G† A G.
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * c - akq * ph_conj * s;
                    a[(k, q)] = akp * s + akq * ph_conj * c;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = apk * c - aqk * phase * s;
                    a[(q, k)] = apk * s + aqk * phase * c;
                }
                a[(p, q)] = c64(0.0, 0.0);
                a[(q, p)] = c64(0.0, 0.0);
                a[(p, p)] = c64(a[(p, p)].re, 0.0);
                a[(q, q)] = c64(a[(q, q)].re, 0.0);
                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = vkp * c - vkq * ph_conj * s;
                        v[(k, q)] = vkp * s + vkq * ph_conj * c;
                    }
                }
            }
        }
    }
    Err(LinalgError::NoConvergence)
}

fn householder_ql(
    mut a: ComplexMatrix,
    want_vectors: bool,
) -> LinalgResult<(Vec<f64>, Option<ComplexMatrix>)> {
    let n = a.rows();
    let zero = c64(0.0, 0.0);
    let mut q = want_vectors.then(|| ComplexMatrix::identity(n));
    let mut v = vec![zero; n];
    let mut p = vec![zero; n];

    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        if (k + 2..n).all(|i| a[(i, k)] == zero) {
            continue;
        }
        // Scale the column first so that squares of tiny entries cannot
        // underflow; the reflector itself is scale invariant.
        let scale = (k + 1..n).fold(0.0f64, |acc, i| acc.max(a[(i, k)].norm()));
        for i in 0..len {
            v[i] = a[(k + 1 + i, k)] / scale;
        }
        let x0 = v[0];
        let alpha = v[..len].iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        let phase = if x0.norm() > 0.0 { x0 / x0.norm() } else { c64(1.0, 0.0) };
        v[0] += phase * alpha;
        let vnorm2: f64 = v[..len].iter().map(|x| x.norm_sqr()).sum();
        let tau = 2.0 / vnorm2;

        // p = τ A22 v, K = τ/2 v†p, w = p - K v
        for i in 0..len {
            let row = &a.as_slice()[(k + 1 + i) * n + k + 1..(k + 2 + i) * n];
            let s: C64 = row.iter().zip(&v[..len]).map(|(x, y)| x * y).sum();
            p[i] = s * tau;
        }
        let vp: C64 = v[..len].iter().zip(&p[..len]).map(|(x, y)| x.conj() * y).sum();
        let kk = 0.5 * tau * vp.re;
        for i in 0..len {
            p[i] -= v[i] * kk;
        }
        // A22 ← A22 - v w† - w v†
        let data = a.as_mut_slice();
        for i in 0..len {
            let (vi, wi) = (v[i], p[i]);
            let row = &mut data[(k + 1 + i) * n + k + 1..(k + 2 + i) * n];
            for ((x, vj), wj) in row.iter_mut().zip(&v[..len]).zip(&p[..len]) {
                *x -= vi * wj.conj() + wi * vj.conj();
            }
        }
        let sub = -phase * (alpha * scale);
        a[(k + 1, k)] = sub;
        a[(k, k + 1)] = sub.conj();
        for i in k + 2..n {
            a[(i, k)] = zero;
            a[(k, i)] = zero;
        }
        if let Some(q) = q.as_mut() {
            // Q ← Q (I - τ v v†)
            let qd = q.as_mut_slice();
            for r in 0..n {
                let row = &mut qd[r * n + k + 1..(r + 1) * n];
                let s: C64 = row.iter().zip(&v[..len]).map(|(x, y)| x * y).sum::<C64>() * tau;
                for (x, vj) in row.iter_mut().zip(&v[..len]) {
                    *x -= s * vj.conj();
                }
            }
        }
    }

    let mut d: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    let mut e = vec![0.0; n];
    // Diagonal phases D make the subdiagonal real: T = D T' D†.
    let mut phases = vec![c64(1.0, 0.0); n];
    for i in 0..n.saturating_sub(1) {
        let sub = a[(i + 1, i)];
        let mag = sub.norm();
        e[i] = mag;
        phases[i + 1] = if mag > 0.0 { phases[i] * (sub / mag) } else { phases[i] };
    }
    drop(a);

    let mut z = want_vectors.then(|| RealMatrix::identity(n));
    tql(&mut d, &mut e, z.as_mut())?;

    let vectors = match (q, z) {
        (Some(mut q), Some(z)) => {
            for r in 0..n {
                for c in 0..n {
                    q[(r, c)] *= phases[c];
                }
            }
            // (Q D) Z with Z real.
            let mut out = ComplexMatrix::zeros(n, n);
            {
                let od = out.as_mut_slice();
                let qd = q.as_slice();
                let zd = z.as_slice();
                for r in 0..n {
                    let orow = &mut od[r * n..(r + 1) * n];
                    for k in 0..n {
                        let qv = qd[r * n + k];
                        if qv == zero {
                            continue;
                        }
                        for (o, zz) in orow.iter_mut().zip(&zd[k * n..(k + 1) * n]) {
                            *o += qv * *zz;
                        }
                    }
                }
            }
            Some(out)
        }
        _ => None,
    };
    Ok(sort_eigenpairs(d, vectors))
}

/// Implicit QL with Wilkinson shifts on a real symmetric tridiagonal matrix.
/// `e[i]` couples `i` and `i + 1`; `e[n-1]` is ignored. Rotations are
/// accumulated into the columns of `z` when given.
fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut RealMatrix>) -> LinalgResult<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    // Absolute deflation floor: clusters of tiny eigenvalues never meet the
    // relative test, and an ε‖T‖ perturbation is within backward stability.
    let norm = d.iter().chain(e.iter()).fold(0.0f64, |acc, x| acc.max(x.abs()));
    let floor = f64::EPSILON * norm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(LinalgError::NoConvergence);
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zk1 = z[(k, i + 1)];
                        let zk = z[(k, i)];
                        z[(k, i + 1)] = s * zk + c * zk1;
                        z[(k, i)] = c * zk - s * zk1;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
