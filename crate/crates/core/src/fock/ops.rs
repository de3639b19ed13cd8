use crate::matkit::{c64, ComplexMatrix, C64};

/// Column-compressed sparse operator: `cols[j]` lists `(i, m[i, j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOp {
    dim: usize,
    cols: Vec<Vec<(usize, C64)>>,
}

impl SparseOp {
    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, usize, C64)>) -> Self {
        let mut cols = vec![Vec::new(); dim];
        for (i, j, v) in entries {
            if v != c64(0.0, 0.0) {
                cols[j].push((i, v));
            }
        }
        Self { dim, cols }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn col(&self, j: usize) -> &[(usize, C64)] {
        &self.cols[j]
    }

    pub fn to_dense(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(self.dim, self.dim);
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                m[(i, j)] += v;
            }
        }
        m
    }

    fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.cols.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |&(i, v)| (i, j, v)))
    }

    pub fn adjoint(&self) -> Self {
        Self::from_entries(self.dim, self.entries().map(|(i, j, v)| (j, i, v.conj())).collect::<Vec<_>>())
    }

    /// `α self + β other`.
    pub fn combine(&self, alpha: C64, other: &SparseOp, beta: C64) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut entries: Vec<_> = self.entries().map(|(i, j, v)| (i, j, alpha * v)).collect();
        entries.extend(other.entries().map(|(i, j, v)| (i, j, beta * v)));
        let mut dense_cols: Vec<Vec<(usize, C64)>> = vec![Vec::new(); self.dim];
        for (i, j, v) in entries {
            match dense_cols[j].iter_mut().find(|(r, _)| *r == i) {
                Some((_, acc)) => *acc += v,
                None => dense_cols[j].push((i, v)),
            }
        }
        Self { dim: self.dim, cols: dense_cols }
    }

    /// `Tr(ρ · self · other)`, linear in the number of nonzeros.
    pub fn trace_product(rho: &ComplexMatrix, first: &SparseOp, second: &SparseOp) -> C64 {
        let mut acc = c64(0.0, 0.0);
        for a in 0..second.dim {
            for &(b, y) in second.col(a) {
                for &(c, x) in first.col(b) {
                    acc += rho[(a, c)] * x * y;
                }
            }
        }
        acc
    }

    /// `Tr(ρ · self)`.
    pub fn expectation(&self, rho: &ComplexMatrix) -> C64 {
        let mut acc = c64(0.0, 0.0);
        for a in 0..self.dim {
            for &(c, x) in self.col(a) {
                acc += rho[(a, c)] * x;
            }
        }
        acc
    }
}

/// Annihilation, creation and number operators of one mode truncated at `N`.
#[derive(Debug, Clone)]
pub struct LadderOps {
    pub cutoff: usize,
    pub a: ComplexMatrix,
    pub a_dag: ComplexMatrix,
    pub number: ComplexMatrix,
}

impl LadderOps {
    pub fn new(cutoff: usize) -> Self {
        let d = cutoff + 1;
        let a = ComplexMatrix::from_fn(d, d, |i, j| {
            if j == i + 1 { c64((j as f64).sqrt(), 0.0) } else { c64(0.0, 0.0) }
        });
        let a_dag = a.adjoint();
        let number = ComplexMatrix::from_real_diag(&(0..d).map(|k| k as f64).collect::<Vec<_>>());
        Self { cutoff, a, a_dag, number }
    }

    /// `max |[a, a†] − I|` over the block below the cutoff.
    pub fn commutator_defect(&self) -> f64 {
        let comm = &(&self.a * &self.a_dag) - &(&self.a_dag * &self.a);
        let d = self.cutoff;
        let mut worst: f64 = 0.0;
        for i in 0..d {
            for j in 0..d {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((comm[(i, j)] - c64(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Lowering operator on `mode` of a `modes`-mode space truncated at `cutoff`.
pub(crate) fn lowering(cutoff: usize, modes: usize, mode: usize) -> SparseOp {
    let d = cutoff + 1;
    let dim = d.pow(modes as u32);
    let stride = if modes == 2 && mode == 0 { d } else { 1 };
    let entries = (0..dim).filter_map(|j| {
        let k = (j / stride) % d;
        (k > 0).then(|| (j - stride, j, c64((k as f64).sqrt(), 0.0)))
    });
    SparseOp::from_entries(dim, entries.collect::<Vec<_>>())
}

/// `x = (a + a†)/√2` and `p = −i(a − a†)/√2` for every mode, in the order
/// `(x1, p1, x2, p2)`.
pub(crate) fn quadratures(cutoff: usize, modes: usize) -> Vec<SparseOp> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..modes)
        .flat_map(|m| {
            let a = lowering(cutoff, modes, m);
            let ad = a.adjoint();
            [a.combine(c64(s, 0.0), &ad, c64(s, 0.0)), a.combine(c64(0.0, -s), &ad, c64(0.0, s))]
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ladder_commutator() {
        let ops = LadderOps::new(10);
        assert!(ops.commutator_defect() < 1e-14);
        let n = &ops.a_dag * &ops.a;
        assert!((&n - &ops.number).max_abs() < 1e-14);
    }

    #[test]
    fn two_mode_lowering_matches_kron() {
        let ops = LadderOps::new(3);
        let id = ComplexMatrix::identity(4);
        assert_eq!(lowering(3, 2, 0).to_dense(), ops.a.kron(&id));
        assert_eq!(lowering(3, 2, 1).to_dense(), id.kron(&ops.a));
    }

    #[test]
    fn trace_product_matches_dense() {
        let q = quadratures(4, 2);
        let rho = ComplexMatrix::from_fn(25, 25, |i, j| c64((i * 3 + j) as f64 * 0.01, (i as f64 - j as f64) * 0.02));
        let dense = &(&rho * &q[0].to_dense()) * &q[3].to_dense();
        let got = SparseOp::trace_product(&rho, &q[0], &q[3]);
        assert!((got - dense.trace()).norm() < 1e-12);
        assert!((q[1].expectation(&rho) - (&rho * &q[1].to_dense()).trace()).norm() < 1e-12);
    }
}
