use super::{c64, ComplexMatrix, LinalgError, LinalgResult};

/// Scaled norm below which the Taylor core is evaluated.
const TAYLOR_RADIUS: f64 = 0.5;
const TAYLOR_MAX_TERMS: usize = 40;

/// Matrix exponential by scaling and squaring around a Taylor core.
///
/// The sparsity pattern is split into connected components first; every
/// component is exponentiated on its own. Generators that conserve a quantum
/// number (beam splitters, two-mode squeezers on a product Fock space) thus
/// reduce to many small dense problems.
pub fn expm(m: &ComplexMatrix) -> LinalgResult<ComplexMatrix> {
    if !m.is_square() {
        return Err(LinalgError::Dimension("exponential of a non-square matrix".into()));
    }
    if !m.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = m.rows();
    let components = connected_components(m);
    if components.len() == 1 {
        return Ok(expm_dense(m));
    }
    let mut out = ComplexMatrix::zeros(n, n);
    for idx in components {
        if idx.len() == 1 {
            let i = idx[0];
            out[(i, i)] = m[(i, i)].exp();
        } else {
            let block = expm_dense(&m.select(&idx));
            out.scatter(&idx, &block);
        }
    }
    Ok(out)
}

fn connected_components(m: &ComplexMatrix) -> Vec<Vec<usize>> {
    let n = m.rows();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let zero = c64(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            if i != j && m[(i, j)] != zero {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    groups
}

fn expm_dense(m: &ComplexMatrix) -> ComplexMatrix {
    let n = m.rows();
    let norm = m.one_norm();
    let squarings = if norm > TAYLOR_RADIUS {
        (norm / TAYLOR_RADIUS).log2().ceil() as i32
    } else {
        0
    };
    let scaled = m.scale(c64(0.5f64.powi(squarings), 0.0));
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=TAYLOR_MAX_TERMS {
        term = (&term * &scaled).scale(c64(1.0 / k as f64, 0.0));
        sum = &sum + &term;
        if term.one_norm() <= f64::EPSILON * 1e-2 * sum.one_norm() {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_xoshiro::Xoshiro256PlusPlus;

    #[test]
    fn zero_gives_identity() {
        let e = expm(&ComplexMatrix::zeros(4, 4)).unwrap();
        assert_eq!(e, ComplexMatrix::identity(4));
    }

    #[test]
    fn diagonal_logs() {
        let m = ComplexMatrix::from_real_diag(&[2f64.ln(), 3f64.ln()]);
        let e = expm(&m).unwrap();
        assert!((e[(0, 0)] - c64(2.0, 0.0)).norm() < 1e-14);
        assert!((e[(1, 1)] - c64(3.0, 0.0)).norm() < 1e-14);
        assert_eq!(e[(0, 1)], c64(0.0, 0.0));
    }

    #[test]
    fn dense_rotation_generator() {
        // exp(θ [[0, -1], [1, 0]]) is a plane rotation; one component only.
        let th = 1.3;
        let m = ComplexMatrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => c64(-th, 0.0),
            (1, 0) => c64(th, 0.0),
            _ => c64(0.0, 0.0),
        });
        let e = expm(&m).unwrap();
        assert!((e[(0, 0)].re - th.cos()).abs() < 1e-14);
        assert!((e[(1, 0)].re - th.sin()).abs() < 1e-14);
    }

    #[test]
    fn block_split_matches_dense() {
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(11);
        // two interleaved blocks {0,2,4} and {1,3}
        let mut m = ComplexMatrix::zeros(5, 5);
        for &(i, j) in &[(0, 2), (2, 4), (0, 4), (1, 3)] {
            let z = c64(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
            m[(i, j)] = z;
            m[(j, i)] = -z.conj();
        }
        let split = expm(&m).unwrap();
        let dense = expm_dense(&m);
        assert!((&split - &dense).max_abs() < 1e-13);
    }

    #[test]
    fn rejects_non_finite() {
        let mut m = ComplexMatrix::zeros(2, 2);
        m[(0, 1)] = c64(f64::NAN, 0.0);
        assert_eq!(expm(&m), Err(LinalgError::NonFinite));
    }
}
