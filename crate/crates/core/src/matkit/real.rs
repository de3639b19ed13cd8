use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use super::dd::Dd;
use super::{c64, ComplexMatrix, LinalgError, LinalgResult};

/// Dense row-major real matrix.
#[derive(Clone, PartialEq)]
pub struct RealMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds a matrix from row-major data.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> LinalgResult<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(LinalgError::Dimension(format!(
                "{} entries for a {rows}×{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows<const N: usize>(rows: &[[f64; N]]) -> Self {
        let data = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_vec(rows.len(), N, data).expect("non-empty rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_nested(&self) -> Vec<Vec<f64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|x| x.is_finite())
    }

    /// Largest `|m_ij - m_ji|`.
    pub fn asymmetry(&self) -> f64 {
        let mut dev: f64 = 0.0;
        for i in 0..self.rows.min(self.cols) {
            for j in 0..i {
                dev = dev.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        dev
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    /// Copies the block starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        let mut s = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                s[(i, j)] = self[(r0 + i, c0 + j)];
            }
        }
        s
    }

    /// Picks the rows and columns listed in `idx`.
    pub fn select(&self, idx: &[usize]) -> Self {
        let mut s = Self::zeros(idx.len(), idx.len());
        for (i, &r) in idx.iter().enumerate() {
            for (j, &c) in idx.iter().enumerate() {
                s[(i, j)] = self[(r, c)];
            }
        }
        s
    }

    pub fn set_submatrix(&mut self, r0: usize, c0: usize, block: &RealMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    /// Block-diagonal direct sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &RealMatrix) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_submatrix(0, 0, self);
        m.set_submatrix(self.rows, self.cols, other);
        m
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        ComplexMatrix::from_fn(self.rows, self.cols, |i, j| c64(self[(i, j)], 0.0))
    }

    pub fn try_mul(&self, rhs: &RealMatrix) -> LinalgResult<RealMatrix> {
        if self.cols != rhs.rows {
            return Err(LinalgError::Dimension(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                let brow = rhs.row(k);
                let orow = &mut out.data[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in orow.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Ok(out)
    }

    /// `selfᵀ · m · self`, the congruence used for covariance transformations.
    pub fn congruence(&self, m: &RealMatrix) -> RealMatrix {
        &(&self.transpose() * m) * self
    }

    /// Determinant: closed form up to 2×2, Leibniz expansion in double-double
    /// for 3×3 and 4×4, partially pivoted LU above.
    ///
    /// A 4×4 covariance matrix with entries of order `a` has a determinant
    /// that can be as small as `1/16`; in plain arithmetic both cofactor
    /// expansion and LU lose about `a⁴ ε` resp. `a² ε` of it.
    pub fn det(&self) -> LinalgResult<f64> {
        if !self.is_square() {
            return Err(LinalgError::Dimension(format!(
                "determinant of a non-square {}×{} matrix",
                self.rows, self.cols
            )));
        }
        let m = |i: usize, j: usize| self[(i, j)];
        Ok(match self.rows {
            1 => m(0, 0),
            2 => m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0),
            3 | 4 => self.leibniz_det(),
            _ => self.lu_det(),
        })
    }

    fn leibniz_det(&self) -> f64 {
        let n = self.rows;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Dd::ZERO;
        permute(&mut perm, 0, true, &mut |p, even| {
            let mut term = Dd::from(1.0);
            for (i, &j) in p.iter().enumerate() {
                term = term.mul_f64(self[(i, j)]);
            }
            total = total.add(if even { term } else { term.neg() });
        });
        total.to_f64()
    }

    fn lu_det(&self) -> f64 {
        let n = self.rows;
        let mut a = self.clone();
        let mut det = 1.0;
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| a[(x, k)].abs().total_cmp(&a[(y, k)].abs()))
                .unwrap();
            if a[(p, k)] == 0.0 {
                return 0.0;
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                }
                det = -det;
            }
            let pivot = a[(k, k)];
            det *= pivot;
            for i in k + 1..n {
                let f = a[(i, k)] / pivot;
                if f != 0.0 {
                    for j in k..n {
                        a[(i, j)] -= f * a[(k, j)];
                    }
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting.
    pub fn inverse(&self) -> LinalgResult<RealMatrix> {
        if !self.is_square() {
            return Err(LinalgError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs();
        for k in 0..n {
            let p = (k..n)
                .max_by(|&x, &y| a[(x, k)].abs().total_cmp(&a[(y, k)].abs()))
                .unwrap();
            if a[(p, k)].abs() <= f64::EPSILON * scale * n as f64 {
                return Err(LinalgError::Singular);
            }
            if p != k {
                for j in 0..n {
                    a.data.swap(k * n + j, p * n + j);
                    inv.data.swap(k * n + j, p * n + j);
                }
            }
            let pivot = a[(k, k)];
            for j in 0..n {
                a[(k, j)] /= pivot;
                inv[(k, j)] /= pivot;
            }
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[(i, k)];
                if f != 0.0 {
                    for j in 0..n {
                        a[(i, j)] -= f * a[(k, j)];
                        inv[(i, j)] -= f * inv[(k, j)];
                    }
                }
            }
        }
        Ok(inv)
    }
}

/// Visits every permutation of `p[k..]` with its parity, by transpositions.
fn permute(p: &mut [usize], k: usize, even: bool, visit: &mut impl FnMut(&[usize], bool)) {
    if k == p.len() {
        visit(p, even);
        return;
    }
    permute(p, k + 1, even, visit);
    for i in k + 1..p.len() {
        p.swap(k, i);
        permute(p, k + 1, !even, visit);
        p.swap(k, i);
    }
}

impl Index<(usize, usize)> for RealMatrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: &RealMatrix) -> RealMatrix {
        self.try_mul(rhs).expect("matrix product dimensions")
    }
}

impl Add for &RealMatrix {
    type Output = RealMatrix;
    fn add(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect();
        RealMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl Sub for &RealMatrix {
    type Output = RealMatrix;
    fn sub(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect();
        RealMatrix { rows: self.rows, cols: self.cols, data }
    }
}

impl fmt::Debug for RealMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RealMatrix {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>12.6e}")).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_identity_and_vacuum() {
        assert_eq!(RealMatrix::identity(4).det().unwrap(), 1.0);
        let vac = RealMatrix::from_diag(&[0.5; 4]);
        assert_eq!(vac.det().unwrap(), 1.0 / 16.0);
    }

    #[test]
    fn det_standard_form_matches_invariant_product() {
        let (a, b, c1, c2) = (2.0, 1.0, 0.5, -0.3);
        let m = RealMatrix::from_rows(&[
            [a, 0.0, c1, 0.0],
            [0.0, a, 0.0, c2],
            [c1, 0.0, b, 0.0],
            [0.0, c2, 0.0, b],
        ]);
        let expected: f64 = (a * b - c1 * c1) * (a * b - c2 * c2);
        assert!((expected - 3.3425).abs() < 1e-12);
        assert!((m.det().unwrap() - expected).abs() < 1e-13);
    }

    #[test]
    fn det_rejects_non_square() {
        let m = RealMatrix::zeros(2, 3);
        assert!(matches!(m.det(), Err(LinalgError::Dimension(_))));
    }

    #[test]
    fn det_matches_permutation_expansion() {
        let m = RealMatrix::from_rows(&[
            [1.0, 2.0, 0.5, -1.0],
            [0.3, -2.0, 1.5, 4.0],
            [2.2, 0.1, -0.7, 1.1],
            [-1.0, 0.9, 3.0, 0.2],
        ]);
        let mut leibniz = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                        if distinct {
                            let inversions = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j)))
                                .filter(|&(i, j)| p[i] > p[j])
                                .count();
                            let sign = if inversions % 2 == 0 { 1.0 } else { -1.0 };
                            leibniz += sign * (0..4).map(|i| m[(i, p[i])]).product::<f64>();
                        }
                    }
                }
            }
        }
        let tol = 1e-12 * f64::max(leibniz.abs(), 1.0);
        assert!((m.det().unwrap() - leibniz).abs() < tol);
        assert!((m.lu_det() - leibniz).abs() < tol);
    }

    #[test]
    fn det_of_strongly_squeezed_pure_state() {
        let (a, c) = (6f64.cosh() / 2.0, 6f64.sinh() / 2.0);
        let m = RealMatrix::from_rows(&[
            [a, 0.0, c, 0.0],
            [0.0, a, 0.0, -c],
            [c, 0.0, a, 0.0],
            [0.0, -c, 0.0, a],
        ]);
        assert!((m.det().unwrap() - 1.0 / 16.0).abs() < 1e-11);
    }

    #[test]
    fn det_three_by_three() {
        let m = RealMatrix::from_rows(&[[2.0, -1.0, 0.0], [-1.0, 2.0, -1.0], [0.0, -1.0, 2.0]]);
        assert_eq!(m.det().unwrap(), 4.0);
    }

    #[test]
    fn inverse_round_trip() {
        let m = RealMatrix::from_rows(&[[4.0, 1.0, 0.0], [1.0, 3.0, 0.5], [0.0, 0.5, 2.0]]);
        let p = &m * &m.inverse().unwrap();
        assert!((&p - &RealMatrix::identity(3)).max_abs() < 1e-14);
        assert_eq!(RealMatrix::zeros(2, 2).inverse(), Err(LinalgError::Singular));
    }
}
