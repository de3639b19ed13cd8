//! Characteristic polynomials and closed-form roots up to degree four.

use super::{c64, ComplexMatrix, LinalgError, LinalgResult, C64};

const NEWTON_STEPS: usize = 3;

/// All eigenvalues (with multiplicity) of a square matrix of size at most 4.
///
/// The characteristic polynomial comes from the Faddeev-LeVerrier recursion;
/// its roots from the quadratic, Cardano or Ferrari formulas followed by
/// Newton polishing.
pub fn complex_eigvals(m: &ComplexMatrix) -> LinalgResult<Vec<C64>> {
    if !m.is_square() {
        return Err(LinalgError::Dimension("eigenvalues of a non-square matrix".into()));
    }
    let n = m.rows();
    if n > 4 {
        return Err(LinalgError::UnsupportedSize { size: n });
    }
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    poly_roots(&char_poly(m))
}

/// Coefficients `[1, c_{n-1}, …, c_0]` of `det(λI - m)`, highest degree first.
fn char_poly(m: &ComplexMatrix) -> Vec<C64> {
    let n = m.rows();
    let mut coeffs = vec![c64(1.0, 0.0)];
    let mut mk = ComplexMatrix::zeros(n, n); // M_0 = 0
    let mut c_prev = c64(1.0, 0.0);
    for k in 1..=n {
        // M_k = m (M_{k-1} + c_{n-k+1} I),  c_{n-k} = -tr(M_k)/k
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[(i, i)] += c_prev;
        }
        mk = m * &shifted;
        let c = -mk.trace() / k as f64;
        coeffs.push(c);
        c_prev = c;
    }
    coeffs
}

/// Roots of a polynomial given highest-degree-first, degree 1 to 4.
pub fn poly_roots(coeffs: &[C64]) -> LinalgResult<Vec<C64>> {
    let lead = *coeffs.first().ok_or(LinalgError::UnsupportedSize { size: 0 })?;
    if lead == c64(0.0, 0.0) {
        return Err(LinalgError::Dimension("leading coefficient is zero".into()));
    }
    let monic: Vec<C64> = coeffs.iter().map(|c| c / lead).collect();
    let mut roots = match monic.len() - 1 {
        1 => vec![-monic[1]],
        2 => quadratic(monic[1], monic[2]).to_vec(),
        3 => cubic(monic[1], monic[2], monic[3]).to_vec(),
        4 => quartic(monic[1], monic[2], monic[3], monic[4]).to_vec(),
        d => return Err(LinalgError::UnsupportedSize { size: d }),
    };
    for r in roots.iter_mut() {
        *r = polish(&monic, *r);
    }
    Ok(roots)
}

fn horner(p: &[C64], x: C64) -> (C64, C64) {
    let mut val = c64(0.0, 0.0);
    let mut der = c64(0.0, 0.0);
    for &c in p {
        der = der * x + val;
        val = val * x + c;
    }
    (val, der)
}

/// Newton steps, each kept only if it lowers the residual.
fn polish(p: &[C64], mut x: C64) -> C64 {
    let (mut fx, mut dfx) = horner(p, x);
    for _ in 0..NEWTON_STEPS {
        if fx.norm() == 0.0 || dfx.norm() == 0.0 {
            break;
        }
        let candidate = x - fx / dfx;
        let (fc, dfc) = horner(p, candidate);
        if fc.norm() >= fx.norm() {
            break;
        }
        x = candidate;
        fx = fc;
        dfx = dfc;
    }
    x
}

/// Roots of `x² + b x + c`, avoiding cancellation.
fn quadratic(b: C64, c: C64) -> [C64; 2] {
    let disc = (b * b - c * 4.0).sqrt();
    let q = if (b.conj() * disc).re >= 0.0 { -(b + disc) * 0.5 } else { -(b - disc) * 0.5 };
    if q == c64(0.0, 0.0) {
        return [c64(0.0, 0.0), c64(0.0, 0.0)];
    }
    [q, c / q]
}

/// Roots of `x³ + a x² + b x + c` (Cardano on the depressed cubic).
fn cubic(a: C64, b: C64, c: C64) -> [C64; 3] {
    let shift = a / 3.0;
    let p = b - a * a / 3.0;
    let q = a * a * a * (2.0 / 27.0) - a * b / 3.0 + c;
    let omega = c64(-0.5, 3f64.sqrt() / 2.0);
    let disc = (q * q / 4.0 + p * p * p / 27.0).sqrt();
    let u3a = -q / 2.0 + disc;
    let u3b = -q / 2.0 - disc;
    let u3 = if u3a.norm() >= u3b.norm() { u3a } else { u3b };
    if u3.norm() == 0.0 {
        // p = q = 0: triple root.
        return [-shift; 3];
    }
    let u = u3.powf(1.0 / 3.0);
    let mut out = [c64(0.0, 0.0); 3];
    let mut w = c64(1.0, 0.0);
    for r in out.iter_mut() {
        let uk = u * w;
        *r = uk - p / (uk * 3.0) - shift;
        w *= omega;
    }
    out
}

/// Roots of `x⁴ + a x³ + b x² + c x + d` (Ferrari on the depressed quartic,
/// biquadratic shortcut when the odd term vanishes).
fn quartic(a: C64, b: C64, c: C64, d: C64) -> [C64; 4] {
    let shift = a / 4.0;
    let a2 = a * a;
    let p = b - a2 * (3.0 / 8.0);
    let q = c - a * b / 2.0 + a2 * a / 8.0;
    let r = d - a * c / 4.0 + a2 * b / 16.0 - a2 * a2 * (3.0 / 256.0);
    let scale = p.norm().powf(1.5).max(r.norm().powf(0.75));
    let ys: [C64; 4] = if q.norm() == 0.0 || (scale > 0.0 && q.norm() <= 1e-14 * scale) {
        let [z1, z2] = quadratic(p, r);
        let (s1, s2) = (z1.sqrt(), z2.sqrt());
        [-s1, s1, -s2, s2]
    } else {
        // Resolvent: m³ + p m² + (p²/4 - r) m - q²/8 = 0, take the largest |m|.
        let ms = cubic(p, p * p / 4.0 - r, -q * q / 8.0);
        let m = ms.into_iter().max_by(|x, y| x.norm().total_cmp(&y.norm())).unwrap();
        let s = (m * 2.0).sqrt();
        let [y1, y2] = quadratic(-s, p / 2.0 + m + q / (s * 2.0));
        let [y3, y4] = quadratic(s, p / 2.0 + m - q / (s * 2.0));
        [y1, y2, y3, y4]
    };
    ys.map(|y| y - shift)
}
