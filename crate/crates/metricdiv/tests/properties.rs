//! Property tests for the structural invariants: validation round trips,
//! kernel monotonicity, monotonicity of diversity under inclusion, scaling,
//! and Lipschitz contraction, sumset cardinality, and the entropy bounds.

use proptest::prelude::*;

use metricdiv::{
    alpha_complexity, disjointify, max_diversity_exact, minkowski_sum, renyi_entropy,
    FiniteMetricSpace, FractionalPartition, PartitionKind, PointMetric, ProbabilityVector,
    RealFiniteSet, SimilarityMatrix,
};
use std::collections::BTreeSet;

/// Sorted line coordinates with gaps bounded away from zero, so kernels stay
/// well conditioned.
fn line_coords(max_points: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.05f64..2.0, 0..max_points).prop_map(|gaps| {
        let mut acc = 0.0;
        let mut xs = vec![0.0];
        for g in gaps {
            acc += g;
            xs.push(acc);
        }
        xs
    })
}

fn line_space(max_points: usize) -> impl Strategy<Value = FiniteMetricSpace> {
    line_coords(max_points).prop_map(|xs| {
        RealFiniteSet::new(xs)
            .unwrap()
            .to_space()
            .expect("separated points")
    })
}

fn probability_vector(max_len: usize) -> impl Strategy<Value = ProbabilityVector> {
    prop::collection::vec(1e-3f64..1.0, 1..max_len)
        .prop_map(|w| ProbabilityVector::from_weights(&w).unwrap())
}

proptest! {
    #[test]
    fn validation_round_trips(space in line_space(7)) {
        let rows = space.distance_rows();
        prop_assert!(FiniteMetricSpace::from_distance_matrix(&rows).is_ok());
    }

    #[test]
    fn laplace_kernel_monotone_in_scale(
        space in line_space(6),
        t1 in 0.1f64..3.0,
        t2 in 0.1f64..3.0,
    ) {
        prop_assume!(space.n() >= 2);
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let z_lo = SimilarityMatrix::laplace(&space, lo).unwrap();
        let z_hi = SimilarityMatrix::laplace(&space, hi).unwrap();
        for i in 0..space.n() {
            for j in 0..space.n() {
                if i != j {
                    prop_assert!(z_lo.get(i, j) >= z_hi.get(i, j));
                }
            }
        }
    }

    #[test]
    fn point_clouds_validate(
        points in (2usize..4).prop_flat_map(|dim| prop::collection::vec(
            prop::collection::vec(-5.0f64..5.0, dim), 1..6usize)),
    ) {
        let min_gap = (0..points.len())
            .flat_map(|i| (i + 1..points.len()).map(move |j| (i, j)))
            .map(|(i, j)| {
                points[i].iter().zip(&points[j]).map(|(a, b)| (a - b).abs()).sum::<f64>()
            })
            .fold(f64::INFINITY, f64::min);
        prop_assume!(min_gap > 1e-6);
        for metric in [PointMetric::Euclidean, PointMetric::L1, PointMetric::Linf] {
            prop_assert!(FiniteMetricSpace::from_points(&points, metric).is_ok());
        }
    }

    #[test]
    fn sumset_cardinality_bound(a in line_coords(5), b in line_coords(5)) {
        let a = RealFiniteSet::new(a).unwrap();
        let b = RealFiniteSet::new(b).unwrap();
        let sum = minkowski_sum(&a, &b).unwrap();
        prop_assert!(sum.len() + 1 >= a.len() + b.len());
    }

    #[test]
    fn disjointify_is_sound(
        parts in prop::collection::vec(
            prop::collection::btree_set(0usize..8, 0..6usize), 0..5usize),
    ) {
        let out = disjointify(&parts);
        prop_assert_eq!(out.len(), parts.len());
        for (fresh, original) in out.iter().zip(&parts) {
            prop_assert!(fresh.is_subset(original));
        }
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                prop_assert!(out[i].is_disjoint(&out[j]));
            }
        }
        let union_in: BTreeSet<usize> = parts.iter().flatten().copied().collect();
        let union_out: BTreeSet<usize> = out.iter().flatten().copied().collect();
        prop_assert_eq!(union_in, union_out);
    }

    #[test]
    fn diversity_monotone_in_scale(
        space in line_space(5),
        t1 in 0.2f64..2.0,
        t2 in 0.2f64..2.0,
    ) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let d_lo = max_diversity_exact(&space, lo).unwrap().d;
        let d_hi = max_diversity_exact(&space, hi).unwrap().d;
        prop_assert!(d_lo <= d_hi + 1e-9);
    }

    #[test]
    fn diversity_monotone_under_inclusion(
        space in line_space(6),
        mask in prop::collection::vec(any::<bool>(), 7),
    ) {
        let indices: Vec<usize> = (0..space.n()).filter(|&i| mask[i]).collect();
        let sub = space.subspace(&indices).unwrap();
        let d_sub = max_diversity_exact(&sub, 1.0).unwrap().d;
        let d_all = max_diversity_exact(&space, 1.0).unwrap().d;
        prop_assert!(d_sub <= d_all + 1e-9);
    }

    #[test]
    fn diversity_shrinks_under_contraction(
        space in line_space(5),
        c in 0.05f64..1.0,
    ) {
        let d_full = max_diversity_exact(&space, 1.0).unwrap().d;
        let d_contracted = max_diversity_exact(&space.scaled(c).unwrap(), 1.0).unwrap().d;
        prop_assert!(d_contracted <= d_full + 1e-9);
    }

    #[test]
    fn maximizer_certificate_holds(space in line_space(6), t in 0.2f64..3.0) {
        let result = max_diversity_exact(&space, t).unwrap();
        let z = SimilarityMatrix::laplace(&space, t).unwrap();
        prop_assert!(result.certificate_holds(&z, 1e-8));
        prop_assert!(result.d >= 1.0 - 1e-12);
        prop_assert!(result.d <= space.n() as f64 + 1e-9);
    }

    #[test]
    fn kronecker_kernel_reduces_to_renyi(
        p in probability_vector(8),
        alpha in prop_oneof![Just(0.0), Just(0.5), Just(1.0), Just(2.0), Just(f64::INFINITY), 0.0f64..8.0],
    ) {
        let z = SimilarityMatrix::kronecker(p.len());
        let a = alpha_complexity(&p, &z, alpha).unwrap();
        let b = renyi_entropy(&p, alpha).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn complexity_bounded_by_entropy(
        p in probability_vector(6),
        alpha in prop_oneof![Just(0.0), Just(1.0), Just(2.0), Just(f64::INFINITY), 0.0f64..4.0],
        gaps in prop::collection::vec(0.1f64..2.0, 5),
    ) {
        // Similarity can only reduce perceived complexity.
        let mut acc = 0.0;
        let mut xs = vec![0.0];
        for g in gaps.iter().take(p.len().saturating_sub(1)) {
            acc += g;
            xs.push(acc);
        }
        let space = RealFiniteSet::new(xs).unwrap().to_space().unwrap();
        let z = SimilarityMatrix::laplace(&space, 1.0).unwrap();
        let h_z = alpha_complexity(&p, &z, alpha).unwrap();
        let h = renyi_entropy(&p, alpha).unwrap();
        prop_assert!(h_z <= h + 1e-9);
        prop_assert!(h_z >= -1e-12);
        prop_assert!(h <= (p.len() as f64).ln() + 1e-12);
    }

    #[test]
    fn partition_kinds_cover(n in 1usize..7, k in 1usize..7) {
        prop_assume!(k <= n);
        // Constructors validate the covering identity internally.
        prop_assert!(FractionalPartition::new(n, PartitionKind::Singletons).is_ok());
        prop_assert!(FractionalPartition::new(n, PartitionKind::UniformK(k)).is_ok());
        if n >= 2 {
            prop_assert!(FractionalPartition::new(n, PartitionKind::LeaveOneOut).is_ok());
        }
    }

    #[test]
    fn partition_mixtures_stay_valid(n in 2usize..6, theta in 0.0f64..1.0) {
        // A convex combination of fractional partitions is again one.
        let singles = FractionalPartition::new(n, PartitionKind::Singletons).unwrap();
        let loo = FractionalPartition::new(n, PartitionKind::LeaveOneOut).unwrap();
        let mut weights: Vec<(BTreeSet<usize>, f64)> = Vec::new();
        for (s, w) in singles.sets() {
            weights.push((s.clone(), theta * w));
        }
        for (s, w) in loo.sets() {
            weights.push((s.clone(), (1.0 - theta) * w));
        }
        prop_assert!(FractionalPartition::explicit(n, weights).is_ok());
    }
}
