//! Named check configurations: default models, trial counts, and
//! tolerances. The verification front end selects checks by name; a name
//! together with a seed and trial count fully determines the report.

use super::checks::{
    check_alpha_independence, check_cardinality_limit, check_diversity_axioms,
    check_diversity_axioms_with, check_fractional_subadditivity,
    check_minkowski_superlinearity, check_mixture_inequality, check_one_point_reduction,
    check_wedge_subadditivity, explore_submodularity, CardinalityDelta,
};
use super::{CheckReport, ModelKind, RandomModel};
use crate::constructions::PartitionKind;
use crate::tolerances;

/// Static description of one runnable check.
#[derive(Debug, Clone, Copy)]
pub struct CheckDef {
    pub name: &'static str,
    /// Exploratory checks report data but never affect an exit status.
    pub exploratory: bool,
    pub default_trials: usize,
    pub default_tol: f64,
    pub description: &'static str,
}

pub const CHECKS: &[CheckDef] = &[
    CheckDef {
        name: "diversity_axioms",
        exploratory: false,
        default_trials: 500,
        default_tol: tolerances::CHECK_EXACT,
        description: "triangle inequality and non-degeneracy for kappa and for log(kappa+1)",
    },
    CheckDef {
        name: "one_point_reduction",
        exploratory: false,
        default_trials: 300,
        default_tol: tolerances::CHECK_EXACT,
        description: "subadditivity on pairs meeting in one point, with the full triangle inequality",
    },
    CheckDef {
        name: "wedge_subadditivity",
        exploratory: false,
        default_trials: 500,
        default_tol: tolerances::CHECK_EXACT,
        description: "D(A v B) + 1 <= D(A) + D(B) and the magnitude wedge identity",
    },
    CheckDef {
        name: "minkowski_superlinearity",
        exploratory: false,
        default_trials: 500,
        default_tol: tolerances::CHECK_EXACT,
        description: "sumset superadditivity, affine superlinearity, and scaling concavity on the line",
    },
    CheckDef {
        name: "fractional_subadditivity",
        exploratory: false,
        default_trials: 200,
        default_tol: tolerances::CHECK_EXACT,
        description: "fractional subadditivity of exp C for unions, including disjointified covers",
    },
    CheckDef {
        name: "mixture_inequality",
        exploratory: false,
        default_trials: 200,
        default_tol: 1e-8,
        description: "exp H_alpha of a mixture against the weighted sub-mixture bound",
    },
    CheckDef {
        name: "alpha_independence",
        exploratory: false,
        default_trials: 50,
        default_tol: tolerances::CHECK_ORACLE,
        description: "simplex oracles across orders agree with exact enumeration",
    },
    CheckDef {
        name: "cardinality_limit",
        exploratory: false,
        default_trials: 50,
        default_tol: 1e-3,
        description: "diversity approaches cardinality at large scale",
    },
    CheckDef {
        name: "explore_submodularity",
        exploratory: true,
        default_trials: 200,
        default_tol: tolerances::CHECK_EXACT,
        description: "survey of the open wedge-submodularity question (tallied, never asserted)",
    },
    CheckDef {
        name: "selftest_violation",
        exploratory: false,
        default_trials: 25,
        default_tol: tolerances::CHECK_EXACT,
        description: "feeds plain cardinality to the axiom check; must fail with a shrunk witness",
    },
];

pub fn find(name: &str) -> Option<&'static CheckDef> {
    CHECKS.iter().find(|c| c.name == name)
}

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

fn line(n: (usize, usize), t: (f64, f64), seed: u64) -> RandomModel {
    RandomModel::new(ModelKind::UniformPointsOnLine, n, t, seed)
}

fn graph(n: (usize, usize), t: (f64, f64), seed: u64) -> RandomModel {
    RandomModel::new(ModelKind::RandomMetricViaShortestPath, n, t, seed)
}

/// Splits a trial budget across two models of the same check.
fn split(total: usize) -> (usize, usize) {
    (total - total / 2, total / 2)
}

/// Runs one check by name. `trials` and `tol` default to the registry
/// values; the same `(name, seed, trials, tol)` always produces the same
/// report.
pub fn run_check(
    name: &str,
    seed: u64,
    trials: Option<usize>,
    tol: Option<f64>,
) -> Option<CheckReport> {
    let def = find(name)?;
    let trials = trials.unwrap_or(def.default_trials);
    let tol = tol.unwrap_or(def.default_tol);
    let t_unit = (1.0, 1.0);
    let t_band = (0.5, 2.0);

    let mut report = match name {
        "diversity_axioms" => {
            let (a, b) = split(trials);
            CheckReport::merge(
                name,
                vec![
                    check_diversity_axioms(&line((2, 7), t_unit, seed), a, tol),
                    check_diversity_axioms(&graph((2, 7), t_unit, seed), b, tol),
                ],
            )
        }
        "one_point_reduction" => {
            let (a, b) = split(trials);
            CheckReport::merge(
                name,
                vec![
                    check_one_point_reduction(&line((3, 7), t_band, seed), a, tol),
                    check_one_point_reduction(&graph((3, 7), t_band, seed), b, tol),
                ],
            )
        }
        "wedge_subadditivity" => {
            // Size 1 parts exercise the identity case A v {pt} = A.
            let (a, b) = split(trials);
            CheckReport::merge(
                name,
                vec![
                    check_wedge_subadditivity(&line((1, 6), t_band, seed), a, tol),
                    check_wedge_subadditivity(&graph((1, 6), t_band, seed), b, tol),
                ],
            )
        }
        "minkowski_superlinearity" => {
            let grid = [0.0, 0.25, 0.5, 0.75, 1.0];
            check_minkowski_superlinearity(&line((2, 4), t_band, seed), trials, &grid, tol)
        }
        "fractional_subadditivity" => {
            let kinds = [
                PartitionKind::Singletons,
                PartitionKind::LeaveOneOut,
                PartitionKind::UniformK(2),
            ];
            let (a, b) = split(trials);
            CheckReport::merge(
                name,
                vec![
                    check_fractional_subadditivity(&graph((4, 7), t_band, seed), a, &kinds, tol),
                    check_fractional_subadditivity(&line((4, 7), t_band, seed), b, &kinds, tol),
                ],
            )
        }
        "mixture_inequality" => {
            let alphas = [0.5, 1.0, 2.0, 64.0, f64::INFINITY];
            check_mixture_inequality(&graph((4, 8), t_band, seed), trials, &alphas, tol)
        }
        "alpha_independence" => {
            let (a, b) = split(trials);
            CheckReport::merge(
                name,
                vec![
                    check_alpha_independence(&line((2, 6), t_band, seed), a, tol),
                    check_alpha_independence(&graph((2, 6), t_band, seed), b, tol),
                ],
            )
        }
        "cardinality_limit" => {
            let (a, b) = split(trials);
            CheckReport::merge(
                name,
                vec![
                    check_cardinality_limit(&line((1, 7), t_unit, seed), a, tol),
                    check_cardinality_limit(&graph((1, 7), t_unit, seed), b, tol),
                ],
            )
        }
        "explore_submodularity" => explore_submodularity(&graph((2, 4), t_band, seed), trials),
        "selftest_violation" => {
            check_diversity_axioms_with(&CardinalityDelta, &line((1, 5), t_unit, seed), trials, tol)
        }
        _ => return None,
    };
    report.check_name = name.to_string();
    Some(report)
}

/// Runs every check except the deliberate self-test failure, in registry
/// order.
pub fn default_suite(seed: u64, trials: Option<usize>, tol: Option<f64>) -> Vec<CheckReport> {
    CHECKS
        .iter()
        .filter(|c| c.name != "selftest_violation")
        .map(|c| run_check(c.name, seed, trials, tol).expect("registry names self-resolve"))
        .collect()
}
