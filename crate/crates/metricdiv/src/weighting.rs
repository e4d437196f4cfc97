//! Weightings and magnitude.
//!
//! A weighting of a similarity matrix `Z` is a signed vector `w` with
//! `Z w = 1` entrywise; the magnitude of a space at scale `t` is the total
//! mass of the weighting of its kernel. When the weighting is strictly
//! positive its normalization is the complexity-maximizing distribution.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::SimilarityMatrix;
use crate::linalg;
use crate::space::FiniteMetricSpace;
use crate::tolerances;

/// Solution of `Z w = 1` together with the max-norm residual it achieved.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightVector {
    pub w: Vec<f64>,
    pub residual: f64,
}

impl WeightVector {
    /// Total mass; for the full space this is the magnitude.
    pub fn sum(&self) -> f64 {
        self.w.iter().sum()
    }

    /// True when every entry exceeds `threshold`.
    pub fn is_strictly_positive(&self, threshold: f64) -> bool {
        self.w.iter().all(|&v| v > threshold)
    }
}

/// Solves `Z w = 1` by a dense solve. Fails with `Singular` on rank
/// deficiency or when the residual exceeds [`tolerances::SOLVE`].
pub fn weighting(z: &SimilarityMatrix) -> Result<WeightVector> {
    let ones = vec![1.0; z.n()];
    let (w, residual) = linalg::solve(z.matrix(), &ones)?;
    if residual > tolerances::SOLVE {
        return Err(Error::Singular { residual });
    }
    Ok(WeightVector { w, residual })
}

/// Magnitude of the space at scale `t`: the total mass of the weighting of
/// its kernel.
pub fn magnitude(space: &FiniteMetricSpace, t: f64) -> Result<f64> {
    let z = SimilarityMatrix::laplace(space, t)?;
    Ok(weighting(&z)?.sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn singleton_weighting_is_one() {
        let s = FiniteMetricSpace::from_distance_matrix(&[vec![0.0]]).unwrap();
        let z = SimilarityMatrix::laplace(&s, 1.0).unwrap();
        let w = weighting(&z).unwrap();
        assert_eq!(w.w, vec![1.0]);
        assert_eq!(magnitude(&s, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn two_point_log3_weighting() {
        let d = 3f64.ln();
        let s = FiniteMetricSpace::from_distance_matrix(&[vec![0.0, d], vec![d, 0.0]]).unwrap();
        let z = SimilarityMatrix::laplace(&s, 1.0).unwrap();
        let w = weighting(&z).unwrap();
        assert_abs_diff_eq!(w.w[0], 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(w.w[1], 0.75, epsilon = 1e-12);
        assert_abs_diff_eq!(magnitude(&s, 1.0).unwrap(), 1.5, epsilon = 1e-12);
    }

    #[test]
    fn three_point_line_magnitude() {
        // {0,1,2}: the total mass is 1 + 2 tanh(1/2).
        let s = FiniteMetricSpace::from_points(
            &[vec![0.0], vec![1.0], vec![2.0]],
            crate::space::PointMetric::Euclidean,
        )
        .unwrap();
        let expected = 1.0 + 2.0 * 0.5f64.tanh();
        assert_abs_diff_eq!(magnitude(&s, 1.0).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn two_point_magnitude_closed_form() {
        // 2 / (1 + e^{-d}) from the symmetric 2x2 solve.
        let d = 0.37;
        let s = FiniteMetricSpace::from_distance_matrix(&[vec![0.0, d], vec![d, 0.0]]).unwrap();
        let expected = 2.0 / (1.0 + (-d).exp());
        assert_abs_diff_eq!(magnitude(&s, 1.0).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn weighting_positivity_helper() {
        let w = WeightVector {
            w: vec![0.5, 1e-13],
            residual: 0.0,
        };
        assert!(!w.is_strictly_positive(tolerances::POSITIVE_WEIGHT));
    }
}
