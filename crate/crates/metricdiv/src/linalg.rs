//! Dense linear algebra for the small symmetric systems behind weightings.
//!
//! Solves are LU with partial pivoting on a copy of the input; the residual
//! of the original system is always reported so callers can decide whether a
//! solution is trustworthy.

use crate::error::{Error, Result};

/// Row-major square matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMat {
    n: usize,
    data: Vec<f64>,
}

impl SquareMat {
    pub fn zeros(n: usize) -> Self {
        SquareMat {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Builds from nested rows, checking squareness.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    n,
                });
            }
            data.extend_from_slice(row);
        }
        Ok(SquareMat { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// `y = A x`, accumulated in index order for determinism.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(x)
                    .fold(0.0, |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Principal submatrix on `idx` (indices assumed valid and sorted).
    pub fn submatrix(&self, idx: &[usize]) -> SquareMat {
        let m = idx.len();
        let mut out = SquareMat::zeros(m);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.set(a, b, self.get(i, j));
            }
        }
        out
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Pivot row `col` and a later row `r`, borrowed disjointly.
    fn pivot_and_row(&mut self, col: usize, r: usize) -> (&[f64], &mut [f64]) {
        debug_assert!(col < r);
        let n = self.n;
        let (top, bottom) = self.data.split_at_mut(r * n);
        (&top[col * n..(col + 1) * n], &mut bottom[..n])
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let n = self.n;
            let (lo, hi) = (a.min(b), a.max(b));
            let (top, bottom) = self.data.split_at_mut(hi * n);
            top[lo * n..(lo + 1) * n].swap_with_slice(&mut bottom[..n]);
        }
    }
}

/// Solves `A x = b` by LU with partial pivoting. Returns the solution and the
/// max-norm residual `||A x - b||_inf` measured against the original system.
pub fn solve(a: &SquareMat, b: &[f64]) -> Result<(Vec<f64>, f64)> {
    let n = a.n();
    debug_assert_eq!(b.len(), n);
    if n == 0 {
        return Ok((Vec::new(), 0.0));
    }

    let mut lu = a.clone();
    let mut x = b.to_vec();
    let scale = a.max_abs();
    // Pivots smaller than this are rank deficiency, not just ill conditioning.
    let pivot_floor = scale * (n as f64) * f64::EPSILON;

    for col in 0..n {
        let mut pivot_row = col;
        let mut pivot_val = lu.get(col, col).abs();
        for r in col + 1..n {
            let v = lu.get(r, col).abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = r;
            }
        }
        if pivot_val <= pivot_floor {
            return Err(Error::Singular {
                residual: f64::INFINITY,
            });
        }
        if pivot_row != col {
            lu.swap_rows(col, pivot_row);
            x.swap(col, pivot_row);
        }
        let inv_pivot = 1.0 / lu.get(col, col);
        for r in col + 1..n {
            let factor = lu.get(r, col) * inv_pivot;
            if factor != 0.0 {
                let (pivot, row) = lu.pivot_and_row(col, r);
                for (v, p) in row[col + 1..].iter_mut().zip(&pivot[col + 1..]) {
                    *v -= factor * p;
                }
                x[r] -= factor * x[col];
            }
            lu.set(r, col, factor);
        }
    }

    // Back substitution.
    for i in (0..n).rev() {
        let mut s = x[i];
        for j in i + 1..n {
            s -= lu.get(i, j) * x[j];
        }
        x[i] = s / lu.get(i, i);
    }

    let residual = a
        .matvec(&x)
        .iter()
        .zip(b)
        .fold(0.0f64, |m, (ax, bi)| m.max((ax - bi).abs()));
    Ok((x, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn solves_identity() {
        let a = SquareMat::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
        let (x, r) = solve(&a, &[2.0, 3.0]).unwrap();
        assert_eq!(x, vec![2.0, 3.0]);
        assert_eq!(r, 0.0);
    }

    #[test]
    fn solves_symmetric_system() {
        let a = SquareMat::from_rows(&[vec![1.0, 1.0 / 3.0], vec![1.0 / 3.0, 1.0]]).unwrap();
        let (x, r) = solve(&a, &[1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(x[0], 0.75, epsilon = 1e-14);
        assert_abs_diff_eq!(x[1], 0.75, epsilon = 1e-14);
        assert!(r < 1e-14);
    }

    #[test]
    fn pivoting_handles_zero_leading_entry() {
        let a = SquareMat::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let (x, _) = solve(&a, &[5.0, 7.0]).unwrap();
        assert_abs_diff_eq!(x[0], 7.0, epsilon = 1e-14);
        assert_abs_diff_eq!(x[1], 5.0, epsilon = 1e-14);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let a = SquareMat::from_rows(&[vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(solve(&a, &[1.0, 1.0]), Err(Error::Singular { .. })));
    }

    #[test]
    fn ragged_rows_rejected() {
        let err = SquareMat::from_rows(&[vec![0.0, 1.0], vec![1.0]]).unwrap_err();
        assert!(matches!(err, Error::NotSquare { row: 1, len: 1, n: 2 }));
    }
}
