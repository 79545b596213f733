use num_complex::Complex64;

use super::matrix::ImpedanceMatrix;
use super::SolverError;

/// Pivots smaller than this fraction of the largest pivot mark the matrix
/// as numerically singular.
const PIVOT_THRESHOLD: f64 = 1e-12;

/// Dense LU factorization with partial (row) pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct LuFactors {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn factor(matrix: &ImpedanceMatrix) -> Result<Self, SolverError> {
        let n = matrix.size();
        let mut lu = matrix.data().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut max_pivot = 0.0_f64;
        let mut min_pivot = f64::INFINITY;

        for col in 0..n {
            let (pivot_row, pivot_abs) = (col..n)
                .map(|r| (r, lu[r * n + col].norm()))
                .fold((col, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_row != col {
                for j in 0..n {
                    lu.swap(col * n + j, pivot_row * n + j);
                }
                perm.swap(col, pivot_row);
            }
            max_pivot = max_pivot.max(pivot_abs);
            min_pivot = min_pivot.min(pivot_abs);
            if pivot_abs == 0.0 {
                return Err(SolverError::Singular {
                    condition_estimate: f64::INFINITY,
                });
            }

            let pivot = lu[col * n + col];
            let (upper, lower) = lu.split_at_mut((col + 1) * n);
            let pivot_row_vals = &upper[col * n..(col + 1) * n];
            for row in lower.chunks_exact_mut(n) {
                let factor = row[col] / pivot;
                row[col] = factor;
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for j in col + 1..n {
                    row[j] -= factor * pivot_row_vals[j];
                }
            }
        }

        if n > 0 && min_pivot < PIVOT_THRESHOLD * max_pivot {
            return Err(SolverError::Singular {
                condition_estimate: max_pivot / min_pivot,
            });
        }
        Ok(Self { n, lu, perm })
    }

    /// Ratio of largest to smallest pivot magnitude; a cheap lower-bound
    /// style indicator of conditioning.
    pub fn pivot_ratio(&self) -> f64 {
        let pivots = (0..self.n).map(|i| self.lu[i * self.n + i].norm());
        let (lo, hi) = pivots.fold((f64::INFINITY, 0.0_f64), |(lo, hi), p| (lo.min(p), hi.max(p)));
        hi / lo
    }

    pub fn solve(&self, rhs: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let s: Complex64 = row.iter().zip(&x[..i]).map(|(a, b)| a * b).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n + i + 1..(i + 1) * n];
            let s: Complex64 = row.iter().zip(&x[i + 1..]).map(|(a, b)| a * b).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        x
    }
}
