//! Finite metric spaces and the point sets on the real line they are built
//! from.
//!
//! `FiniteMetricSpace::new` is the single validation gate: every distance
//! matrix entering the crate passes through it, and every constructor that
//! assembles a matrix (point clouds, subspaces, wedge sums) routes its output
//! back through the same checks.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::SquareMat;
use crate::tolerances;

/// Norm used when deriving distances from point coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointMetric {
    Euclidean,
    L1,
    Linf,
}

impl PointMetric {
    pub(crate) fn distance(&self, a: &[f64], b: &[f64]) -> f64 {
        match self {
            PointMetric::Euclidean => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y) * (x - y))
                .sum::<f64>()
                .sqrt(),
            PointMetric::L1 => a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum(),
            PointMetric::Linf => a
                .iter()
                .zip(b)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max),
        }
    }
}

impl std::str::FromStr for PointMetric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euclidean" => Ok(PointMetric::Euclidean),
            "l1" => Ok(PointMetric::L1),
            "linf" => Ok(PointMetric::Linf),
            other => Err(Error::Parse(format!("unknown metric name {other:?}"))),
        }
    }
}

/// A validated finite metric space: labelled points and a symmetric distance
/// matrix with zero diagonal, positive off-diagonal entries, and the triangle
/// inequality within [`tolerances::METRIC`] (relative).
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    dist: SquareMat,
}

impl FiniteMetricSpace {
    /// Validates a distance matrix against the metric axioms. The first
    /// violated axiom is reported with witness indices; checks run in the
    /// order finiteness, diagonal, symmetry, positivity, triangle.
    pub fn new(labels: Vec<String>, matrix: &[Vec<f64>], tol: f64) -> Result<Self> {
        let dist = SquareMat::from_rows(matrix)?;
        let n = dist.n();
        if labels.len() != n {
            return Err(Error::LabelMismatch {
                labels: labels.len(),
                n,
            });
        }
        let tol_abs = tol * dist.max_abs().max(1.0);
        for i in 0..n {
            for j in 0..n {
                if !dist.get(i, j).is_finite() {
                    return Err(Error::NotFinite { i, j });
                }
            }
        }
        for i in 0..n {
            let v = dist.get(i, i);
            if v.abs() > tol_abs {
                return Err(Error::NonzeroDiagonal { i, value: v });
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (dist.get(i, j), dist.get(j, i));
                if (a - b).abs() > tol_abs {
                    return Err(Error::Asymmetric { i, j, a, b });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && dist.get(i, j) <= 0.0 {
                    return Err(Error::NonpositiveOffDiagonal {
                        i,
                        j,
                        value: dist.get(i, j),
                    });
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for k in 0..n {
                    if k == i || k == j {
                        continue;
                    }
                    let lhs = dist.get(i, j);
                    let rhs = dist.get(i, k) + dist.get(k, j);
                    if lhs > rhs + tol_abs {
                        return Err(Error::TriangleViolation { i, j, k, lhs, rhs });
                    }
                }
            }
        }
        Ok(FiniteMetricSpace { labels, dist })
    }

    /// Constructs without validation; the caller guarantees the axioms hold
    /// (used for spaces that are metrics by construction, where the cubic
    /// triangle sweep would dominate the actual computation).
    pub(crate) fn from_parts_unchecked(labels: Vec<String>, dist: SquareMat) -> Self {
        FiniteMetricSpace { labels, dist }
    }

    /// Validates a matrix with index labels and the default tolerance.
    pub fn from_distance_matrix(matrix: &[Vec<f64>]) -> Result<Self> {
        let labels = (0..matrix.len()).map(|i| i.to_string()).collect();
        FiniteMetricSpace::new(labels, matrix, tolerances::METRIC)
    }

    /// Pairwise distances of a point cloud under the named norm. Points must
    /// share a dimension and be pairwise distinct.
    pub fn from_points(points: &[Vec<f64>], metric: PointMetric) -> Result<Self> {
        let labels = (0..points.len()).map(|i| i.to_string()).collect();
        FiniteMetricSpace::from_labelled_points(labels, points, metric)
    }

    pub fn from_labelled_points(
        labels: Vec<String>,
        points: &[Vec<f64>],
        metric: PointMetric,
    ) -> Result<Self> {
        let n = points.len();
        if let Some(first) = points.first() {
            let dim = first.len();
            for p in points {
                if p.len() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: p.len(),
                    });
                }
            }
        }
        let mut rows = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let d = metric.distance(&points[i], &points[j]);
                if d <= 0.0 {
                    return Err(Error::DuplicatePoints { i, j });
                }
                rows[i][j] = d;
                rows[j][i] = d;
            }
        }
        FiniteMetricSpace::new(labels, &rows, tolerances::METRIC)
    }

    pub fn n(&self) -> usize {
        self.dist.n()
    }

    pub fn is_empty(&self) -> bool {
        self.n() == 0
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> f64 {
        self.dist.get(i, j)
    }

    /// Distance matrix as nested rows (for serialization and round trips).
    pub fn distance_rows(&self) -> Vec<Vec<f64>> {
        self.dist.rows()
    }

    /// Smallest off-diagonal distance; infinity for spaces with fewer than
    /// two points.
    pub fn min_distance(&self) -> f64 {
        let n = self.n();
        let mut m = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                m = m.min(self.dist.get(i, j));
            }
        }
        m
    }

    /// Induced metric on the given (sorted, distinct, in-range) indices.
    pub fn subspace(&self, indices: &[usize]) -> Result<Self> {
        for &i in indices {
            if i >= self.n() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: self.n(),
                });
            }
        }
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        Ok(FiniteMetricSpace {
            labels,
            dist: self.dist.submatrix(indices),
        })
    }

    /// Same point set with every distance multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0) {
            return Err(Error::NonpositiveScale(c));
        }
        let mut dist = self.dist.clone();
        let n = dist.n();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    dist.set(i, j, dist.get(i, j) * c);
                }
            }
        }
        Ok(FiniteMetricSpace {
            labels: self.labels.clone(),
            dist,
        })
    }
}

/// A finite metric space with a distinguished point.
#[derive(Debug, Clone, PartialEq)]
pub struct PointedFiniteMetricSpace {
    pub space: FiniteMetricSpace,
    pub basepoint: usize,
}

impl PointedFiniteMetricSpace {
    pub fn new(space: FiniteMetricSpace, basepoint: usize) -> Result<Self> {
        if basepoint >= space.n() {
            return Err(Error::IndexOutOfRange {
                index: basepoint,
                n: space.n(),
            });
        }
        Ok(PointedFiniteMetricSpace { space, basepoint })
    }
}

/// A finite subset of the real line, kept strictly increasing. Construction
/// sorts and merges points closer than [`tolerances::DEDUP`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealFiniteSet {
    xs: Vec<f64>,
}

impl RealFiniteSet {
    pub fn new(mut xs: Vec<f64>) -> Result<Self> {
        for (i, x) in xs.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::NotFinite { i, j: i });
            }
        }
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut deduped: Vec<f64> = Vec::with_capacity(xs.len());
        for x in xs {
            match deduped.last() {
                Some(&last) if (x - last).abs() <= tolerances::DEDUP => {}
                _ => deduped.push(x),
            }
        }
        Ok(RealFiniteSet { xs: deduped })
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    /// Coordinates multiplied by `c` (which may be zero, collapsing the set).
    pub fn scaled(&self, c: f64) -> Self {
        RealFiniteSet::new(self.xs.iter().map(|x| x * c).collect())
            .expect("scaling finite coordinates stays finite")
    }

    /// The induced metric space under `|x - y|`, labelled by coordinates.
    /// Sorted distinct coordinates satisfy the axioms by construction, so
    /// the cubic validation sweep is skipped (epsilon nets reach thousands
    /// of points).
    pub fn to_space(&self) -> Result<FiniteMetricSpace> {
        let n = self.xs.len();
        let labels = self.xs.iter().map(|x| x.to_string()).collect();
        let mut dist = SquareMat::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let d = (self.xs[j] - self.xs[i]).abs();
                dist.set(i, j, d);
                dist.set(j, i, d);
            }
        }
        Ok(FiniteMetricSpace::from_parts_unchecked(labels, dist))
    }
}

/// A compact subset of the real line: a sorted list of pairwise-disjoint
/// closed intervals (degenerate points allowed). Overlapping or touching
/// input intervals are merged.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealCompactSet {
    intervals: Vec<(f64, f64)>,
}

impl RealCompactSet {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        for &(a, b) in &intervals {
            if !a.is_finite() || !b.is_finite() || a > b {
                return Err(Error::InvalidInterval { a, b });
            }
        }
        intervals.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for (a, b) in intervals {
            match merged.last_mut() {
                Some(last) if a <= last.1 => last.1 = last.1.max(b),
                _ => merged.push((a, b)),
            }
        }
        Ok(RealCompactSet { intervals: merged })
    }

    /// A single point `{x}`.
    pub fn point(x: f64) -> Result<Self> {
        RealCompactSet::new(vec![(x, x)])
    }

    pub fn intervals(&self) -> &[(f64, f64)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Total Lebesgue measure.
    pub fn total_length(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    /// Gaps between consecutive intervals, in order.
    pub fn gaps(&self) -> Vec<f64> {
        self.intervals
            .windows(2)
            .map(|w| w[1].0 - w[0].1)
            .collect()
    }
}
