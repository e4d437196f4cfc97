//! Seeded randomized verification of the inequalities the diversity
//! invariants satisfy.
//!
//! Each check draws instances from a [`RandomModel`], evaluates a family of
//! assertions on every instance, and reports violations after deterministic
//! shrinking (points are dropped one at a time while the violation
//! persists). Identical `(check name, seed, trials)` always reproduce the
//! same report, including the violation list.

use serde::Serialize;

use crate::space::FiniteMetricSpace;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

mod checks;
mod gen;
pub mod registry;

pub use checks::{
    check_alpha_independence, check_cardinality_limit, check_diversity_axioms,
    check_diversity_axioms_with, check_fractional_subadditivity, check_minkowski_superlinearity,
    check_mixture_inequality, check_one_point_reduction, check_wedge_subadditivity,
    explore_submodularity, CardinalityDelta, KappaExact, SetFunction,
};

/// Families of random finite metric spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelKind {
    /// Distinct points drawn uniformly on a segment of the line.
    UniformPointsOnLine,
    /// Distinct points drawn uniformly in the unit cube of this dimension.
    UniformPointsInCube(usize),
    /// Symmetric positive edge weights closed under all-pairs shortest
    /// paths, which guarantees the triangle inequality by construction.
    RandomMetricViaShortestPath,
}

/// A seeded generator of test spaces and scales. Every space it produces
/// passes metric validation.
#[derive(Debug, Clone, Serialize)]
pub struct RandomModel {
    pub kind: ModelKind,
    pub n_range: (usize, usize),
    pub t_range: (f64, f64),
    pub seed: u64,
}

impl RandomModel {
    pub fn new(kind: ModelKind, n_range: (usize, usize), t_range: (f64, f64), seed: u64) -> Self {
        RandomModel {
            kind,
            n_range,
            t_range,
            seed,
        }
    }

    /// Per-trial stream: trials are independent and may run in any order.
    pub(crate) fn trial_rng(&self, trial: usize) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ trial as u64)
    }

    /// The space and scale this model yields for a trial index. Every space
    /// passes metric validation by construction.
    pub fn sample_for_trial(&self, trial: usize) -> (FiniteMetricSpace, f64) {
        let mut rng = self.trial_rng(trial);
        let space = self.sample_space(&mut rng);
        let t = self.sample_t(&mut rng);
        (space, t)
    }

    pub(crate) fn sample_n(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(self.n_range.0..=self.n_range.1)
    }

    pub(crate) fn sample_t(&self, rng: &mut ChaCha8Rng) -> f64 {
        if self.t_range.0 == self.t_range.1 {
            self.t_range.0
        } else {
            rng.gen_range(self.t_range.0..self.t_range.1)
        }
    }

    pub(crate) fn sample_space(&self, rng: &mut ChaCha8Rng) -> FiniteMetricSpace {
        let n = self.sample_n(rng);
        self.sample_space_of_size(rng, n)
    }

    pub(crate) fn sample_space_of_size(&self, rng: &mut ChaCha8Rng, n: usize) -> FiniteMetricSpace {
        match self.kind {
            ModelKind::UniformPointsOnLine => gen::line_space(rng, n),
            ModelKind::UniformPointsInCube(dim) => gen::cube_space(rng, n, dim),
            ModelKind::RandomMetricViaShortestPath => gen::shortest_path_space(rng, n),
        }
    }
}

/// One assertion that failed, with the (shrunk) instance that witnessed it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Violation {
    pub assertion: String,
    pub instance: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

/// Outcome of one check: every assertion evaluated over `trials` seeded
/// instances. `worst_slack` is the smallest slack seen anywhere; violations
/// are exactly the assertions whose slack fell below `-tolerance`. Wall time
/// is tracked but deliberately left out of the serialized form so reports
/// are byte-identical across reruns.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check_name: String,
    pub trials: usize,
    pub violations: Vec<Violation>,
    pub worst_slack: f64,
    pub seed: u64,
    pub tolerance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
    #[serde(skip)]
    pub elapsed: f64,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Combines sub-runs of one named check (for configurations that split
    /// trials across several models).
    pub(crate) fn merge(name: &str, reports: Vec<CheckReport>) -> CheckReport {
        let mut out = CheckReport {
            check_name: name.to_string(),
            trials: 0,
            violations: Vec::new(),
            worst_slack: f64::INFINITY,
            seed: reports.first().map(|r| r.seed).unwrap_or(0),
            tolerance: reports.first().map(|r| r.tolerance).unwrap_or(0.0),
            notes: None,
            elapsed: 0.0,
        };
        let mut notes = Vec::new();
        for r in reports {
            out.trials += r.trials;
            out.violations.extend(r.violations);
            out.worst_slack = out.worst_slack.min(r.worst_slack);
            out.elapsed += r.elapsed;
            if let Some(n) = r.notes {
                notes.push(n);
            }
        }
        if !out.worst_slack.is_finite() {
            out.worst_slack = 0.0;
        }
        if !notes.is_empty() {
            out.notes = Some(notes.join("; "));
        }
        out
    }
}
