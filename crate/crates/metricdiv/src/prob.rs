//! Probability vectors on the points of a space, with explicit support.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerances;

/// A point on the probability simplex. Entries are nonnegative, sum to 1
/// within [`tolerances::SIMPLEX`], and the support records the indices whose
/// mass exceeds [`tolerances::SUPPORT`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityVector {
    p: Vec<f64>,
    support: Vec<usize>,
}

impl ProbabilityVector {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        for (i, &v) in p.iter().enumerate() {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::NegativeProbability { i, value: v });
            }
        }
        if !p.is_empty() {
            let sum: f64 = p.iter().sum();
            if (sum - 1.0).abs() > tolerances::SIMPLEX {
                return Err(Error::NotNormalized { sum });
            }
        }
        let support = p
            .iter()
            .enumerate()
            .filter(|(_, &v)| v > tolerances::SUPPORT)
            .map(|(i, _)| i)
            .collect();
        Ok(ProbabilityVector { p, support })
    }

    /// The empty distribution on an empty space; only meaningful as the
    /// maximizer field of the conventional empty-set result.
    pub(crate) fn empty() -> Self {
        ProbabilityVector {
            p: Vec::new(),
            support: Vec::new(),
        }
    }

    pub fn uniform(n: usize) -> Self {
        ProbabilityVector::new(vec![1.0 / n as f64; n]).expect("uniform vector is normalized")
    }

    pub fn point_mass(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let mut p = vec![0.0; n];
        p[i] = 1.0;
        ProbabilityVector::new(p)
    }

    /// Normalizes nonnegative weights with positive total mass.
    pub fn from_weights(w: &[f64]) -> Result<Self> {
        let sum: f64 = w.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::NotNormalized { sum });
        }
        ProbabilityVector::new(w.iter().map(|v| v / sum).collect())
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.p[i]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.p
    }

    /// Indices carrying mass above the support threshold, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_has_full_support() {
        let p = ProbabilityVector::uniform(4);
        assert_eq!(p.support(), &[0, 1, 2, 3]);
        assert!((p.as_slice().iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn point_mass_support_is_single() {
        let p = ProbabilityVector::point_mass(3, 1).unwrap();
        assert_eq!(p.support(), &[1]);
        assert!(ProbabilityVector::point_mass(3, 3).is_err());
    }

    #[test]
    fn tiny_entries_are_outside_support() {
        let p = ProbabilityVector::new(vec![1.0 - 1e-13, 1e-13]).unwrap();
        assert_eq!(p.support(), &[0]);
    }

    #[test]
    fn rejects_bad_mass() {
        assert!(matches!(
            ProbabilityVector::new(vec![0.5, 0.4]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            ProbabilityVector::new(vec![1.5, -0.5]),
            Err(Error::NegativeProbability { .. })
        ));
    }

    #[test]
    fn from_weights_normalizes() {
        let p = ProbabilityVector::from_weights(&[3.0, 1.0]).unwrap();
        assert!((p.get(0) - 0.75).abs() < 1e-15);
    }
}
