//! Similarity matrices.
//!
//! The workhorse is the negative-exponential kernel `z[i][j] = exp(-t d(i,j))`
//! at a scale `t > 0`; a Kronecker-delta kernel and a raw-matrix entry point
//! exist so that the order-`alpha` complexities can be compared against plain
//! Renyi entropies.

use crate::error::{Error, Result};
use crate::linalg::SquareMat;
use crate::space::FiniteMetricSpace;

/// A symmetric similarity matrix with entries in `[0,1]` and unit diagonal,
/// together with the scale it was built at.
#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityMatrix {
    z: SquareMat,
    scale: f64,
}

impl SimilarityMatrix {
    /// `z[i][j] = exp(-t d(i,j))`; the diagonal is exactly 1.
    pub fn laplace(space: &FiniteMetricSpace, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::NonpositiveScale(t));
        }
        let n = space.n();
        let mut z = SquareMat::zeros(n);
        for i in 0..n {
            z.set(i, i, 1.0);
            for j in i + 1..n {
                let v = (-t * space.distance(i, j)).exp();
                z.set(i, j, v);
                z.set(j, i, v);
            }
        }
        Ok(SimilarityMatrix { z, scale: t })
    }

    /// Identity similarity: distinct points are completely dissimilar.
    pub fn kronecker(n: usize) -> Self {
        let mut z = SquareMat::zeros(n);
        for i in 0..n {
            z.set(i, i, 1.0);
        }
        SimilarityMatrix { z, scale: 1.0 }
    }

    /// Validates an arbitrary symmetric kernel with entries in `[0,1]` and
    /// unit diagonal.
    pub fn from_matrix(rows: &[Vec<f64>], scale: f64) -> Result<Self> {
        if !(scale > 0.0) {
            return Err(Error::NonpositiveScale(scale));
        }
        let z = SquareMat::from_rows(rows)?;
        let n = z.n();
        for i in 0..n {
            for j in 0..n {
                let v = z.get(i, j);
                if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                    return Err(Error::InvalidSimilarity { i, j, value: v });
                }
                if i == j && v != 1.0 {
                    return Err(Error::InvalidSimilarity { i, j, value: v });
                }
                if (v - z.get(j, i)).abs() > 0.0 {
                    return Err(Error::Asymmetric {
                        i,
                        j,
                        a: v,
                        b: z.get(j, i),
                    });
                }
            }
        }
        Ok(SimilarityMatrix { z, scale })
    }

    pub fn n(&self) -> usize {
        self.z.n()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.z.get(i, j)
    }

    /// `(Zp)_x = sum_y z[x][y] p_y` for every `x`.
    pub fn apply(&self, p: &[f64]) -> Vec<f64> {
        self.z.matvec(p)
    }

    pub(crate) fn matrix(&self) -> &SquareMat {
        &self.z
    }

    /// Restriction of the kernel to the given sorted indices.
    pub(crate) fn restrict(&self, indices: &[usize]) -> SimilarityMatrix {
        SimilarityMatrix {
            z: self.z.submatrix(indices),
            scale: self.scale,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn two_point(d: f64) -> FiniteMetricSpace {
        FiniteMetricSpace::from_distance_matrix(&[vec![0.0, d], vec![d, 0.0]]).unwrap()
    }

    #[test]
    fn laplace_of_log3_distance() {
        let z = SimilarityMatrix::laplace(&two_point(3f64.ln()), 1.0).unwrap();
        assert_eq!(z.get(0, 0), 1.0);
        assert_eq!(z.get(1, 1), 1.0);
        assert_abs_diff_eq!(z.get(0, 1), 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(z.get(0, 1), z.get(1, 0));
    }

    #[test]
    fn laplace_at_scale_two() {
        let z = SimilarityMatrix::laplace(&two_point(1.0), 2.0).unwrap();
        assert_abs_diff_eq!(z.get(0, 1), (-2.0f64).exp(), epsilon = 1e-15);
    }

    #[test]
    fn diagonal_is_exactly_one() {
        let s = FiniteMetricSpace::from_distance_matrix(&[
            vec![0.0, 0.3, 0.4],
            vec![0.3, 0.0, 0.5],
            vec![0.4, 0.5, 0.0],
        ])
        .unwrap();
        let z = SimilarityMatrix::laplace(&s, 7.0).unwrap();
        for i in 0..3 {
            assert_eq!(z.get(i, i), 1.0);
        }
    }

    #[test]
    fn nonpositive_scale_rejected() {
        let err = SimilarityMatrix::laplace(&two_point(1.0), 0.0).unwrap_err();
        assert!(matches!(err, Error::NonpositiveScale(_)));
    }

    #[test]
    fn monotone_in_scale() {
        let s = two_point(0.7);
        let z1 = SimilarityMatrix::laplace(&s, 0.5).unwrap();
        let z2 = SimilarityMatrix::laplace(&s, 1.5).unwrap();
        assert!(z1.get(0, 1) >= z2.get(0, 1));
    }

    #[test]
    fn kronecker_reduces_matvec_to_identity() {
        let z = SimilarityMatrix::kronecker(3);
        let p = vec![0.2, 0.3, 0.5];
        assert_eq!(z.apply(&p), p);
    }

    #[test]
    fn from_matrix_validates_range() {
        let err = SimilarityMatrix::from_matrix(&[vec![1.0, 1.5], vec![1.5, 1.0]], 1.0)
            .unwrap_err();
        assert!(matches!(err, Error::InvalidSimilarity { .. }));
    }
}
