//! Builders for composite objects: wedge sums, Minkowski sums and affine
//! combinations on the line, unions inside an ambient space,
//! disjointifications, fractional partitions, and mixtures.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::prob::ProbabilityVector;
use crate::space::{FiniteMetricSpace, PointedFiniteMetricSpace, RealFiniteSet};
use crate::tolerances;

/// Glues two pointed spaces at their basepoints. Within-part distances are
/// unchanged and cross distances route through the glue point. Points are
/// ordered glue point first (labelled `*`), then the first space's remaining
/// points (prefixed `A:`), then the second's (prefixed `B:`).
pub fn wedge_sum(
    a: &PointedFiniteMetricSpace,
    b: &PointedFiniteMetricSpace,
) -> Result<PointedFiniteMetricSpace> {
    if a.space.is_empty() || b.space.is_empty() {
        return Err(Error::EmptySet);
    }
    let (na, nb) = (a.space.n(), b.space.n());
    let a_rest: Vec<usize> = (0..na).filter(|&i| i != a.basepoint).collect();
    let b_rest: Vec<usize> = (0..nb).filter(|&i| i != b.basepoint).collect();

    let mut labels = Vec::with_capacity(na + nb - 1);
    labels.push("*".to_string());
    labels.extend(a_rest.iter().map(|&i| format!("A:{}", a.space.label(i))));
    labels.extend(b_rest.iter().map(|&i| format!("B:{}", b.space.label(i))));

    // Distance of each glued point to the glue point.
    let mut to_base = vec![0.0];
    to_base.extend(a_rest.iter().map(|&i| a.space.distance(i, a.basepoint)));
    to_base.extend(b_rest.iter().map(|&i| b.space.distance(i, b.basepoint)));

    let n = na + nb - 1;
    let mut rows = vec![vec![0.0; n]; n];
    let part = |k: usize| -> (u8, usize) {
        if k == 0 {
            (0, 0)
        } else if k <= a_rest.len() {
            (1, a_rest[k - 1])
        } else {
            (2, b_rest[k - 1 - a_rest.len()])
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            let (pi, oi) = part(i);
            let (pj, oj) = part(j);
            let d = match (pi, pj) {
                (0, 1) => a.space.distance(a.basepoint, oj),
                (0, 2) => b.space.distance(b.basepoint, oj),
                (1, 1) => a.space.distance(oi, oj),
                (2, 2) => b.space.distance(oi, oj),
                // Across the glue point.
                _ => to_base[i] + to_base[j],
            };
            rows[i][j] = d;
            rows[j][i] = d;
        }
    }
    let space = FiniteMetricSpace::new(labels, &rows, tolerances::METRIC)?;
    PointedFiniteMetricSpace::new(space, 0)
}

/// The sumset `{a + b}` as a sorted deduplicated finite set.
pub fn minkowski_sum(a: &RealFiniteSet, b: &RealFiniteSet) -> Result<RealFiniteSet> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut sums = Vec::with_capacity(a.len() * b.len());
    for &x in a.xs() {
        for &y in b.xs() {
            sums.push(x + y);
        }
    }
    RealFiniteSet::new(sums)
}

/// `(1 - lambda) A + lambda B` for `lambda` in `[0,1]`. The endpoints return
/// the corresponding set unscaled.
pub fn affine_combination(
    a: &RealFiniteSet,
    b: &RealFiniteSet,
    lambda: f64,
) -> Result<RealFiniteSet> {
    if !(0.0..=1.0).contains(&lambda) || lambda.is_nan() {
        return Err(Error::LambdaOutOfRange(lambda));
    }
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    if lambda == 0.0 {
        return Ok(a.clone());
    }
    if lambda == 1.0 {
        return Ok(b.clone());
    }
    minkowski_sum(&a.scaled(1.0 - lambda), &b.scaled(lambda))
}

/// Induced metric on the union of the given index sets.
pub fn union_subspace(
    ambient: &FiniteMetricSpace,
    parts: &[BTreeSet<usize>],
) -> Result<FiniteMetricSpace> {
    let mut union = BTreeSet::new();
    for part in parts {
        union.extend(part.iter().copied());
    }
    let indices: Vec<usize> = union.into_iter().collect();
    ambient.subspace(&indices)
}

/// Replaces a cover by the pairwise-disjoint sets with the same union,
/// removing from each set everything seen earlier.
pub fn disjointify(parts: &[BTreeSet<usize>]) -> Vec<BTreeSet<usize>> {
    let mut seen = BTreeSet::new();
    parts
        .iter()
        .map(|part| {
            let fresh: BTreeSet<usize> = part.difference(&seen).copied().collect();
            seen.extend(part.iter().copied());
            fresh
        })
        .collect()
}

/// Ready-made families of fractional partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PartitionKind {
    /// Weight 1 on every singleton.
    Singletons,
    /// Weight `1/(n-1)` on every complement of a singleton; needs `n >= 2`.
    LeaveOneOut,
    /// Weight `1/C(n-1,k-1)` on every `k`-subset.
    UniformK(usize),
}

/// Nonnegative weights on nonempty subsets of `{0,..,n-1}` such that the
/// weights of the subsets containing any fixed element sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct FractionalPartition {
    n: usize,
    beta: Vec<(BTreeSet<usize>, f64)>,
}

fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut acc = 1.0f64;
    for i in 0..k {
        acc = acc * (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

fn k_subsets(n: usize, k: usize) -> Vec<BTreeSet<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<BTreeSet<usize>>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

impl FractionalPartition {
    pub fn new(n: usize, kind: PartitionKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("n must be at least 1".into()));
        }
        let beta: Vec<(BTreeSet<usize>, f64)> = match kind {
            PartitionKind::Singletons => (0..n)
                .map(|i| (BTreeSet::from([i]), 1.0))
                .collect(),
            PartitionKind::LeaveOneOut => {
                if n < 2 {
                    return Err(Error::InvalidPartition(
                        "leave-one-out needs at least 2 parts".into(),
                    ));
                }
                let w = 1.0 / (n - 1) as f64;
                (0..n)
                    .map(|i| ((0..n).filter(|&j| j != i).collect(), w))
                    .collect()
            }
            PartitionKind::UniformK(k) => {
                if k == 0 || k > n {
                    return Err(Error::InvalidPartition(format!(
                        "k = {k} outside 1..={n}"
                    )));
                }
                let w = 1.0 / binomial(n - 1, k - 1);
                k_subsets(n, k).into_iter().map(|s| (s, w)).collect()
            }
        };
        let mut beta = beta;
        beta.sort_by(|a, b| a.0.cmp(&b.0));
        let partition = FractionalPartition { n, beta };
        partition.verify_covering()?;
        Ok(partition)
    }

    /// Builds from explicit weights, validating the covering identity.
    /// Duplicate sets have their weights merged.
    pub fn explicit(n: usize, weights: Vec<(BTreeSet<usize>, f64)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidPartition("n must be at least 1".into()));
        }
        let mut merged: Vec<(BTreeSet<usize>, f64)> = Vec::new();
        for (set, w) in weights {
            if set.is_empty() {
                return Err(Error::InvalidPartition("weight on the empty set".into()));
            }
            if let Some(&max) = set.iter().max() {
                if max >= n {
                    return Err(Error::InvalidPartition(format!(
                        "element {max} outside 0..{n}"
                    )));
                }
            }
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidPartition(format!("negative weight {w}")));
            }
            match merged.iter_mut().find(|(s, _)| *s == set) {
                Some(entry) => entry.1 += w,
                None => merged.push((set, w)),
            }
        }
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        let partition = FractionalPartition { n, beta: merged };
        partition.verify_covering()?;
        Ok(partition)
    }

    fn verify_covering(&self) -> Result<()> {
        for i in 0..self.n {
            let total: f64 = self
                .beta
                .iter()
                .filter(|(s, _)| s.contains(&i))
                .map(|(_, w)| w)
                .sum();
            if (total - 1.0).abs() > tolerances::PARTITION {
                return Err(Error::InvalidPartition(format!(
                    "element {i} is covered with total weight {total}"
                )));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The weighted subsets, in a deterministic order.
    pub fn sets(&self) -> impl Iterator<Item = (&BTreeSet<usize>, f64)> {
        self.beta.iter().map(|(s, w)| (s, *w))
    }
}

// Wire format: {"n": 3, "beta": [{"set": [0,1], "w": 0.5}, ...]}.
#[derive(Serialize, Deserialize)]
struct PartitionWire {
    n: usize,
    beta: Vec<PartitionEntryWire>,
}

#[derive(Serialize, Deserialize)]
struct PartitionEntryWire {
    set: Vec<usize>,
    w: f64,
}

impl Serialize for FractionalPartition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PartitionWire {
            n: self.n,
            beta: self
                .beta
                .iter()
                .map(|(s, w)| PartitionEntryWire {
                    set: s.iter().copied().collect(),
                    w: *w,
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FractionalPartition {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = PartitionWire::deserialize(deserializer)?;
        FractionalPartition::explicit(
            wire.n,
            wire.beta
                .into_iter()
                .map(|e| (e.set.into_iter().collect(), e.w))
                .collect(),
        )
        .map_err(serde::de::Error::custom)
    }
}

/// A mixture of distributions with pairwise-disjoint supports on one ambient
/// space.
#[derive(Debug, Clone, PartialEq)]
pub struct MixtureSpec {
    components: Vec<ProbabilityVector>,
    lambdas: Vec<f64>,
}

impl MixtureSpec {
    pub fn new(components: Vec<ProbabilityVector>, lambdas: Vec<f64>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptySet);
        }
        if components.len() != lambdas.len() {
            return Err(Error::DimensionMismatch {
                expected: components.len(),
                got: lambdas.len(),
            });
        }
        let n = components[0].len();
        for c in &components {
            if c.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: c.len(),
                });
            }
        }
        for &l in &lambdas {
            if !(0.0..=1.0).contains(&l) || l.is_nan() {
                return Err(Error::LambdaOutOfRange(l));
            }
        }
        let total: f64 = lambdas.iter().sum();
        if (total - 1.0).abs() > tolerances::PARTITION {
            return Err(Error::NotNormalized { sum: total });
        }
        let mut seen: BTreeSet<usize> = BTreeSet::new();
        for c in &components {
            for &x in c.support() {
                if !seen.insert(x) {
                    return Err(Error::InvalidPartition(format!(
                        "supports overlap at point {x}"
                    )));
                }
            }
        }
        Ok(MixtureSpec {
            components,
            lambdas,
        })
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn dimension(&self) -> usize {
        self.components[0].len()
    }

    /// The full mixture `sum_i lambda_i mu_i`.
    pub fn mixture(&self) -> ProbabilityVector {
        self.sub_mixture(&(0..self.components.len()).collect())
            .expect("full index set has unit mass")
    }

    /// The renormalized sub-mixture on the components indexed by `s`.
    pub fn sub_mixture(&self, s: &BTreeSet<usize>) -> Result<ProbabilityVector> {
        for &i in s {
            if i >= self.components.len() {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    n: self.components.len(),
                });
            }
        }
        let mass: f64 = s.iter().map(|&i| self.lambdas[i]).sum();
        if !(mass > 0.0) {
            return Err(Error::ZeroMassSubset);
        }
        let mut p = vec![0.0; self.dimension()];
        for &i in s {
            let li = self.lambdas[i];
            if li == 0.0 {
                continue;
            }
            for (slot, &v) in p.iter_mut().zip(self.components[i].as_slice()) {
                *slot += li * v / mass;
            }
        }
        ProbabilityVector::new(p)
    }
}
