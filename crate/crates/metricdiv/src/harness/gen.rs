//! Random instance generation for the harness.

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::space::{FiniteMetricSpace, PointMetric, RealFiniteSet};

/// Minimum separation enforced between generated points so that kernels stay
/// well conditioned and dedup thresholds are never in play.
const MIN_GAP: f64 = 0.05;

pub(crate) fn line_points(rng: &mut ChaCha8Rng, n: usize) -> RealFiniteSet {
    loop {
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..10.0)).collect();
        let set = RealFiniteSet::new(xs).expect("finite coordinates");
        if set.len() == n && set.xs().windows(2).all(|w| w[1] - w[0] >= MIN_GAP) {
            return set;
        }
    }
}

pub(crate) fn line_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
    line_points(rng, n).to_space().expect("separated points form a metric")
}

pub(crate) fn cube_space(rng: &mut ChaCha8Rng, n: usize, dim: usize) -> FiniteMetricSpace {
    let dim = dim.max(1);
    loop {
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(0.0..1.0)).collect())
            .collect();
        let separated = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                PointMetric::Euclidean.distance(&points[i], &points[j]) >= MIN_GAP
            })
        });
        if separated {
            return FiniteMetricSpace::from_points(&points, PointMetric::Euclidean)
                .expect("separated points form a metric");
        }
    }
}

pub(crate) fn shortest_path_space(rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
    let mut dist = vec![vec![0.0f64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let w = rng.gen_range(0.5..2.0);
            dist[i][j] = w;
            dist[j][i] = w;
        }
    }
    // Floyd-Warshall closes the weights under the triangle inequality.
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = dist[i][k] + dist[k][j];
                if via < dist[i][j] {
                    dist[i][j] = via;
                }
            }
        }
    }
    FiniteMetricSpace::from_distance_matrix(&dist).expect("shortest paths form a metric")
}

/// Each point joins with probability 1/2; resamples while the emptiness
/// constraint fails.
pub(crate) fn random_subset(
    rng: &mut ChaCha8Rng,
    n: usize,
    require_nonempty: bool,
) -> BTreeSet<usize> {
    loop {
        let subset: BTreeSet<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
        if !require_nonempty || !subset.is_empty() {
            return subset;
        }
    }
}

/// Masses of a flat Dirichlet draw over `n` slots.
pub(crate) fn dirichlet(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let total: f64 = g.iter().sum();
        if total > 0.0 {
            return g.iter().map(|v| v / total).collect();
        }
    }
}
