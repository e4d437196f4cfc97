//! The checks: one function per inequality family.
//!
//! Each check turns a random instance into a list of assertions of the form
//! `lhs <= rhs + tol` (slack `rhs - lhs`), or equalities encoded as
//! `slack = -|difference|`. Assertions with a looser tolerance than the
//! check's own are normalized by scaling, so a single threshold classifies
//! everything. A violating instance is shrunk by dropping points one at a
//! time while the violation persists, and only then reported.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use super::{gen, CheckReport, RandomModel, Violation};
use crate::constructions::{
    affine_combination, disjointify, minkowski_sum, wedge_sum, FractionalPartition, MixtureSpec,
    PartitionKind,
};
use crate::diversity::max_diversity_exact;
use crate::entropy::alpha_complexity;
use crate::kernel::SimilarityMatrix;
use crate::oracle::simplex_oracle;
use crate::prob::ProbabilityVector;
use crate::space::{FiniteMetricSpace, PointedFiniteMetricSpace, RealFiniteSet};
use crate::weighting::magnitude;

/// A `kappa`-like set function on subsets of an ambient space. The default
/// is the exact maximum-diversity value; alternative implementations can be
/// plugged into the diversity-axiom check to demonstrate how violations are
/// detected and shrunk.
pub trait SetFunction: Sync {
    fn name(&self) -> &'static str;
    /// Value on the named subset; genuine diversities vanish exactly on
    /// subsets of size at most one.
    fn eval(&self, ambient: &FiniteMetricSpace, t: f64, subset: &BTreeSet<usize>) -> f64;
}

/// `kappa = D - 1` via exact enumeration, with the empty-set convention.
pub struct KappaExact;

impl SetFunction for KappaExact {
    fn name(&self) -> &'static str {
        "kappa_exact"
    }

    fn eval(&self, ambient: &FiniteMetricSpace, t: f64, subset: &BTreeSet<usize>) -> f64 {
        diversity_of_subset(ambient, t, subset) - 1.0
    }
}

/// Plain cardinality. Monotone and subadditive but not non-degenerate
/// (singletons score 1), so feeding it to the diversity-axiom check must
/// produce a violation; used to exercise reporting and shrinking.
pub struct CardinalityDelta;

impl SetFunction for CardinalityDelta {
    fn name(&self) -> &'static str {
        "cardinality"
    }

    fn eval(&self, _ambient: &FiniteMetricSpace, _t: f64, subset: &BTreeSet<usize>) -> f64 {
        subset.len() as f64
    }
}

/// Exact maximum diversity of an index subset, with `D(empty) = 1`.
fn diversity_of_subset(space: &FiniteMetricSpace, t: f64, subset: &BTreeSet<usize>) -> f64 {
    if subset.is_empty() {
        return 1.0;
    }
    let idx: Vec<usize> = subset.iter().copied().collect();
    let sub = space.subspace(&idx).expect("subset indices stay in range");
    max_diversity_exact(&sub, t)
        .expect("desk-scale subspace")
        .d
}

struct Assertion {
    name: String,
    lhs: f64,
    rhs: f64,
    slack: f64,
}

impl Assertion {
    /// `lhs <= rhs + tol`.
    fn le(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        Assertion {
            name: name.into(),
            lhs,
            rhs,
            slack: rhs - lhs,
        }
    }

    /// `|value| <= tol`.
    fn eq_zero(name: impl Into<String>, value: f64) -> Self {
        Assertion {
            name: name.into(),
            lhs: value,
            rhs: 0.0,
            slack: -value.abs(),
        }
    }

    /// `value > 0`, strictly; failure is reported with a synthetic slack so
    /// it always lands below any reasonable tolerance.
    fn positive(name: impl Into<String>, value: f64) -> Self {
        Assertion {
            name: name.into(),
            lhs: 0.0,
            rhs: value,
            slack: if value > 0.0 { value } else { -1.0 },
        }
    }
}

fn worst_violation(assertions: &[Assertion], tol: f64) -> Option<usize> {
    let mut worst: Option<usize> = None;
    for (i, a) in assertions.iter().enumerate() {
        if a.slack < -tol && worst.map_or(true, |w| a.slack < assertions[w].slack) {
            worst = Some(i);
        }
    }
    worst
}

struct ReportBuilder {
    check_name: String,
    seed: u64,
    tol: f64,
    worst: f64,
    violations: Vec<Violation>,
    notes: Option<String>,
    started: Instant,
}

impl ReportBuilder {
    fn new(check_name: impl Into<String>, seed: u64, tol: f64) -> Self {
        ReportBuilder {
            check_name: check_name.into(),
            seed,
            tol,
            worst: f64::INFINITY,
            violations: Vec::new(),
            notes: None,
            started: Instant::now(),
        }
    }

    /// Evaluates one instance; on violation, shrinks greedily through
    /// `candidates` and records the minimal witness.
    fn record<I: Clone + Serialize>(
        &mut self,
        instance: I,
        eval: &dyn Fn(&I) -> Vec<Assertion>,
        candidates: &dyn Fn(&I) -> Vec<I>,
    ) {
        let assertions = eval(&instance);
        for a in &assertions {
            self.worst = self.worst.min(a.slack);
        }
        if worst_violation(&assertions, self.tol).is_none() {
            return;
        }
        let mut current = instance;
        loop {
            let mut advanced = false;
            for candidate in candidates(&current) {
                if worst_violation(&eval(&candidate), self.tol).is_some() {
                    current = candidate;
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
        let final_assertions = eval(&current);
        let idx = worst_violation(&final_assertions, self.tol)
            .expect("shrinking preserves the violation");
        let witness = &final_assertions[idx];
        self.violations.push(Violation {
            assertion: witness.name.clone(),
            instance: serde_json::to_string(&current).expect("instances serialize"),
            lhs: witness.lhs,
            rhs: witness.rhs,
            slack: witness.slack,
        });
    }

    fn note(&mut self, text: String) {
        self.notes = Some(text);
    }

    fn finish(self, trials: usize) -> CheckReport {
        CheckReport {
            check_name: self.check_name,
            trials,
            violations: self.violations,
            worst_slack: if self.worst.is_finite() { self.worst } else { 0.0 },
            seed: self.seed,
            tolerance: self.tol,
            notes: self.notes,
            elapsed: self.started.elapsed().as_secs_f64(),
        }
    }
}

// ---------------------------------------------------------------------------
// Instance plumbing shared by several checks.

fn drop_point(dist: &[Vec<f64>], k: usize) -> Vec<Vec<f64>> {
    dist.iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, v)| *v)
                .collect()
        })
        .collect()
}

fn remap(indices: &[usize], k: usize) -> Vec<usize> {
    indices
        .iter()
        .filter(|&&i| i != k)
        .map(|&i| if i > k { i - 1 } else { i })
        .collect()
}

fn to_set(indices: &[usize]) -> BTreeSet<usize> {
    indices.iter().copied().collect()
}

fn union_of(a: &[usize], b: &[usize]) -> BTreeSet<usize> {
    a.iter().chain(b.iter()).copied().collect()
}

fn space_of(dist: &[Vec<f64>]) -> FiniteMetricSpace {
    FiniteMetricSpace::from_distance_matrix(dist).expect("instance matrices stay metric")
}

fn alpha_label(alpha: f64) -> String {
    if alpha == f64::INFINITY {
        "inf".to_string()
    } else {
        format!("{alpha}")
    }
}

fn kind_label(kind: PartitionKind) -> String {
    match kind {
        PartitionKind::Singletons => "singletons".to_string(),
        PartitionKind::LeaveOneOut => "leave_one_out".to_string(),
        PartitionKind::UniformK(k) => format!("uniform_{k}"),
    }
}

// ---------------------------------------------------------------------------
// Diversity axioms.

#[derive(Clone, Serialize)]
struct TripleInstance {
    dist: Vec<Vec<f64>>,
    t: f64,
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
}

impl TripleInstance {
    fn shrink(&self) -> Vec<TripleInstance> {
        let n = self.dist.len();
        (0..n)
            .filter_map(|k| {
                let c = remap(&self.c, k);
                if c.is_empty() {
                    return None;
                }
                Some(TripleInstance {
                    dist: drop_point(&self.dist, k),
                    t: self.t,
                    a: remap(&self.a, k),
                    b: remap(&self.b, k),
                    c,
                })
            })
            .collect()
    }
}

fn eval_diversity_axioms(inst: &TripleInstance, delta: &dyn SetFunction) -> Vec<Assertion> {
    let space = space_of(&inst.dist);
    let value = |s: &BTreeSet<usize>| delta.eval(&space, inst.t, s);
    let ab = value(&union_of(&inst.a, &inst.b));
    let ac = value(&union_of(&inst.a, &inst.c));
    let bc = value(&union_of(&inst.b, &inst.c));

    let mut assertions = vec![
        Assertion::le("triangle_kappa", ab, ac + bc),
        Assertion::le(
            "triangle_complexity",
            (ab + 1.0).ln(),
            (ac + 1.0).ln() + (bc + 1.0).ln(),
        ),
    ];
    for (label, subset) in [("a", &inst.a), ("b", &inst.b), ("c", &inst.c)] {
        let v = value(&to_set(subset));
        if subset.len() <= 1 {
            assertions.push(Assertion::eq_zero(
                format!("nondegeneracy_zero[{label}]"),
                v,
            ));
        } else {
            assertions.push(Assertion::positive(
                format!("nondegeneracy_positive[{label}]"),
                v,
            ));
        }
    }
    assertions
}

/// Triangle inequality and non-degeneracy for `kappa` (and for the
/// complexity it induces via `log(kappa + 1)`) on random subset triples.
pub fn check_diversity_axioms(model: &RandomModel, trials: usize, tol: f64) -> CheckReport {
    check_diversity_axioms_named("diversity_axioms", &KappaExact, model, trials, tol)
}

/// Same check with a pluggable set function.
pub fn check_diversity_axioms_with(
    delta: &dyn SetFunction,
    model: &RandomModel,
    trials: usize,
    tol: f64,
) -> CheckReport {
    let name = format!("diversity_axioms[{}]", delta.name());
    check_diversity_axioms_named(name, delta, model, trials, tol)
}

fn check_diversity_axioms_named(
    name: impl Into<String>,
    delta: &dyn SetFunction,
    model: &RandomModel,
    trials: usize,
    tol: f64,
) -> CheckReport {
    let mut report = ReportBuilder::new(name, model.seed, tol);
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        let space = model.sample_space(&mut rng);
        let n = space.n();
        let instance = TripleInstance {
            dist: space.distance_rows(),
            t: model.sample_t(&mut rng),
            a: gen::random_subset(&mut rng, n, false).into_iter().collect(),
            b: gen::random_subset(&mut rng, n, false).into_iter().collect(),
            c: gen::random_subset(&mut rng, n, true).into_iter().collect(),
        };
        report.record(
            instance,
            &|i| eval_diversity_axioms(i, delta),
            &TripleInstance::shrink,
        );
    }
    report.finish(trials)
}

// ---------------------------------------------------------------------------
// One-point reduction.

#[derive(Clone, Serialize)]
struct OnePointInstance {
    dist: Vec<Vec<f64>>,
    t: f64,
    a: Vec<usize>,
    b: Vec<usize>,
    c: Vec<usize>,
}

impl OnePointInstance {
    fn shrink(&self) -> Vec<OnePointInstance> {
        let n = self.dist.len();
        (0..n)
            .filter_map(|k| {
                let a = remap(&self.a, k);
                let b = remap(&self.b, k);
                let c = remap(&self.c, k);
                let meet: Vec<usize> = a.iter().filter(|i| b.contains(i)).copied().collect();
                if meet.len() != 1 || c.is_empty() {
                    return None;
                }
                Some(OnePointInstance {
                    dist: drop_point(&self.dist, k),
                    t: self.t,
                    a,
                    b,
                    c,
                })
            })
            .collect()
    }
}

fn eval_one_point(inst: &OnePointInstance) -> Vec<Assertion> {
    let space = space_of(&inst.dist);
    let kappa = |s: &BTreeSet<usize>| diversity_of_subset(&space, inst.t, s) - 1.0;
    vec![
        Assertion::le(
            "one_point_subadditivity",
            kappa(&union_of(&inst.a, &inst.b)),
            kappa(&to_set(&inst.a)) + kappa(&to_set(&inst.b)),
        ),
        Assertion::le(
            "triangle_consistency",
            kappa(&union_of(&inst.a, &inst.b)),
            kappa(&union_of(&inst.a, &inst.c)) + kappa(&union_of(&inst.b, &inst.c)),
        ),
    ]
}

/// Subadditivity of `kappa` on pairs meeting in exactly one point, together
/// with the full triangle inequality on the same instances.
pub fn check_one_point_reduction(model: &RandomModel, trials: usize, tol: f64) -> CheckReport {
    let mut report = ReportBuilder::new("one_point_reduction", model.seed, tol);
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        let space = model.sample_space(&mut rng);
        let n = space.n();
        let pivot = rng.gen_range(0..n);
        let mut a = vec![pivot];
        let mut b = vec![pivot];
        for i in 0..n {
            if i == pivot {
                continue;
            }
            match rng.gen_range(0..3) {
                0 => a.push(i),
                1 => b.push(i),
                _ => {}
            }
        }
        a.sort_unstable();
        b.sort_unstable();
        let instance = OnePointInstance {
            dist: space.distance_rows(),
            t: model.sample_t(&mut rng),
            a,
            b,
            c: gen::random_subset(&mut rng, n, true).into_iter().collect(),
        };
        report.record(instance, &eval_one_point, &OnePointInstance::shrink);
    }
    report.finish(trials)
}

// ---------------------------------------------------------------------------
// Wedge subadditivity.

#[derive(Clone, Serialize)]
struct WedgePairInstance {
    dist_a: Vec<Vec<f64>>,
    bp_a: usize,
    dist_b: Vec<Vec<f64>>,
    bp_b: usize,
    t: f64,
}

fn drop_nonbase(dist: &[Vec<f64>], bp: usize, k: usize) -> (Vec<Vec<f64>>, usize) {
    debug_assert_ne!(bp, k);
    (drop_point(dist, k), if k < bp { bp - 1 } else { bp })
}

impl WedgePairInstance {
    fn shrink(&self) -> Vec<WedgePairInstance> {
        let mut out = Vec::new();
        for k in 0..self.dist_a.len() {
            if k == self.bp_a {
                continue;
            }
            let (dist_a, bp_a) = drop_nonbase(&self.dist_a, self.bp_a, k);
            out.push(WedgePairInstance {
                dist_a,
                bp_a,
                dist_b: self.dist_b.clone(),
                bp_b: self.bp_b,
                t: self.t,
            });
        }
        for k in 0..self.dist_b.len() {
            if k == self.bp_b {
                continue;
            }
            let (dist_b, bp_b) = drop_nonbase(&self.dist_b, self.bp_b, k);
            out.push(WedgePairInstance {
                dist_a: self.dist_a.clone(),
                bp_a: self.bp_a,
                dist_b,
                bp_b,
                t: self.t,
            });
        }
        out
    }

    fn pointed(&self) -> (PointedFiniteMetricSpace, PointedFiniteMetricSpace) {
        let a = PointedFiniteMetricSpace::new(space_of(&self.dist_a), self.bp_a)
            .expect("basepoint stays valid");
        let b = PointedFiniteMetricSpace::new(space_of(&self.dist_b), self.bp_b)
            .expect("basepoint stays valid");
        (a, b)
    }
}

fn eval_wedge(inst: &WedgePairInstance) -> Vec<Assertion> {
    let (a, b) = inst.pointed();
    let w = wedge_sum(&a, &b).expect("wedge of valid pointed spaces");
    let da = max_diversity_exact(&a.space, inst.t).expect("desk scale").d;
    let db = max_diversity_exact(&b.space, inst.t).expect("desk scale").d;
    let dw = max_diversity_exact(&w.space, inst.t).expect("desk scale").d;
    let mut assertions = vec![Assertion::le("wedge_subadditivity", dw + 1.0, da + db)];
    if let (Ok(ma), Ok(mb), Ok(mw)) = (
        magnitude(&a.space, inst.t),
        magnitude(&b.space, inst.t),
        magnitude(&w.space, inst.t),
    ) {
        assertions.push(Assertion::eq_zero(
            "magnitude_wedge_equality",
            mw - (ma + mb - 1.0),
        ));
    }
    assertions
}

/// `D(A v B) + 1 <= D(A) + D(B)` on random pointed pairs, plus the magnitude
/// identity `M(A v B) = M(A) + M(B) - 1` whenever the weightings exist.
pub fn check_wedge_subadditivity(model: &RandomModel, trials: usize, tol: f64) -> CheckReport {
    let mut report = ReportBuilder::new("wedge_subadditivity", model.seed, tol);
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        let sa = model.sample_space(&mut rng);
        let sb = model.sample_space(&mut rng);
        let instance = WedgePairInstance {
            bp_a: rng.gen_range(0..sa.n()),
            dist_a: sa.distance_rows(),
            bp_b: rng.gen_range(0..sb.n()),
            dist_b: sb.distance_rows(),
            t: model.sample_t(&mut rng),
        };
        report.record(instance, &eval_wedge, &WedgePairInstance::shrink);
    }
    report.finish(trials)
}

// ---------------------------------------------------------------------------
// Minkowski superlinearity on the line.

#[derive(Clone, Serialize)]
struct SumsetPairInstance {
    a: Vec<f64>,
    b: Vec<f64>,
    t: f64,
}

impl SumsetPairInstance {
    fn shrink(&self) -> Vec<SumsetPairInstance> {
        let mut out = Vec::new();
        if self.a.len() > 1 {
            for k in 0..self.a.len() {
                let mut a = self.a.clone();
                a.remove(k);
                out.push(SumsetPairInstance {
                    a,
                    b: self.b.clone(),
                    t: self.t,
                });
            }
        }
        if self.b.len() > 1 {
            for k in 0..self.b.len() {
                let mut b = self.b.clone();
                b.remove(k);
                out.push(SumsetPairInstance {
                    a: self.a.clone(),
                    b,
                    t: self.t,
                });
            }
        }
        out
    }
}

fn kappa_of_line_set(set: &RealFiniteSet, t: f64) -> f64 {
    if set.is_empty() {
        return 0.0;
    }
    let space = set.to_space().expect("separated line points");
    max_diversity_exact(&space, t).expect("desk scale").d - 1.0
}

fn eval_minkowski(inst: &SumsetPairInstance, lambda_grid: &[f64]) -> Vec<Assertion> {
    let a = RealFiniteSet::new(inst.a.clone()).expect("finite coordinates");
    let b = RealFiniteSet::new(inst.b.clone()).expect("finite coordinates");
    let ka = kappa_of_line_set(&a, inst.t);
    let kb = kappa_of_line_set(&b, inst.t);
    let sum = minkowski_sum(&a, &b).expect("nonempty sets");

    let mut assertions = vec![Assertion::le(
        "minkowski_superadditivity",
        ka + kb,
        kappa_of_line_set(&sum, inst.t),
    )];
    for &lambda in lambda_grid {
        let mix = affine_combination(&a, &b, lambda).expect("lambda in range");
        assertions.push(Assertion::le(
            format!("affine_superlinearity[{lambda}]"),
            (1.0 - lambda) * ka + lambda * kb,
            kappa_of_line_set(&mix, inst.t),
        ));
    }
    // Concavity of lambda -> D(lambda E) - (lambda D(E) + (1 - lambda)),
    // checked through second differences on an 11-point grid.
    for (label, set, kappa) in [("a", &a, ka), ("b", &b, kb)] {
        let d_full = kappa + 1.0;
        let f: Vec<f64> = (0..=10)
            .map(|i| {
                let lambda = i as f64 / 10.0;
                let d_scaled = kappa_of_line_set(&set.scaled(lambda), inst.t) + 1.0;
                d_scaled - (lambda * d_full + (1.0 - lambda))
            })
            .collect();
        for i in 1..10 {
            assertions.push(Assertion::le(
                format!("scaling_concavity[{label},{i}]"),
                f[i - 1] + f[i + 1],
                2.0 * f[i],
            ));
        }
    }
    assertions
}

/// Superadditivity of `kappa` under sumsets, its affine-combination
/// refinement on a grid of mixing weights, and concavity of the scaling
/// defect, all on random finite subsets of the line.
pub fn check_minkowski_superlinearity(
    model: &RandomModel,
    trials: usize,
    lambda_grid: &[f64],
    tol: f64,
) -> CheckReport {
    let mut report = ReportBuilder::new("minkowski_superlinearity", model.seed, tol);
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        // Sizes stay small enough that the sumset is cheap to enumerate.
        let (a, b) = loop {
            let na = rng.gen_range(2..=4);
            let nb = rng.gen_range(2..=4);
            let a = gen::line_points(&mut rng, na);
            let b = gen::line_points(&mut rng, nb);
            let sum = minkowski_sum(&a, &b).expect("nonempty");
            if sum.len() <= 12 {
                break (a, b);
            }
        };
        let instance = SumsetPairInstance {
            a: a.xs().to_vec(),
            b: b.xs().to_vec(),
            t: model.sample_t(&mut rng),
        };
        report.record(
            instance,
            &|i| eval_minkowski(i, lambda_grid),
            &SumsetPairInstance::shrink,
        );
    }
    report.finish(trials)
}

// ---------------------------------------------------------------------------
// Fractional subadditivity for unions.

#[derive(Clone, Serialize)]
struct CoverInstance {
    dist: Vec<Vec<f64>>,
    t: f64,
    parts: Vec<Vec<usize>>,
}

impl CoverInstance {
    fn shrink(&self) -> Vec<CoverInstance> {
        let n = self.dist.len();
        if n <= 1 {
            return Vec::new();
        }
        (0..n)
            .map(|k| CoverInstance {
                dist: drop_point(&self.dist, k),
                t: self.t,
                parts: self.parts.iter().map(|p| remap(p, k)).collect(),
            })
            .collect()
    }
}

fn eval_fractional(inst: &CoverInstance, kinds: &[PartitionKind]) -> Vec<Assertion> {
    let space = space_of(&inst.dist);
    let d_of = |s: &BTreeSet<usize>| diversity_of_subset(&space, inst.t, s);
    let parts: Vec<BTreeSet<usize>> = inst.parts.iter().map(|p| to_set(p)).collect();
    let full: BTreeSet<usize> = parts.iter().flatten().copied().collect();
    let d_full = d_of(&full);
    let disjoint = disjointify(&parts);

    let mut assertions = Vec::new();
    for &kind in kinds {
        let partition = match FractionalPartition::new(parts.len(), kind) {
            Ok(p) => p,
            Err(_) => continue,
        };
        let rhs_for = |family: &[BTreeSet<usize>]| -> f64 {
            partition
                .sets()
                .map(|(s, w)| {
                    let union: BTreeSet<usize> =
                        s.iter().flat_map(|&i| family[i].iter().copied()).collect();
                    w * d_of(&union)
                })
                .sum()
        };
        let label = kind_label(kind);
        assertions.push(Assertion::le(
            format!("fractional_subadditivity[{label}]"),
            d_full,
            rhs_for(&parts),
        ));
        assertions.push(Assertion::le(
            format!("fractional_subadditivity_disjointified[{label}]"),
            d_full,
            rhs_for(&disjoint),
        ));
    }
    assertions
}

/// `D(union of all parts) <= sum_s beta(s) D(union over s)` for every
/// requested fractional-partition kind, including the disjointified variant
/// of each cover.
pub fn check_fractional_subadditivity(
    model: &RandomModel,
    trials: usize,
    kinds: &[PartitionKind],
    tol: f64,
) -> CheckReport {
    let mut report = ReportBuilder::new("fractional_subadditivity", model.seed, tol);
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        let space = model.sample_space(&mut rng);
        let n = space.n();
        let n_parts = rng.gen_range(2..=4);
        let parts: Vec<Vec<usize>> = (0..n_parts)
            .map(|_| gen::random_subset(&mut rng, n, true).into_iter().collect())
            .collect();
        let instance = CoverInstance {
            dist: space.distance_rows(),
            t: model.sample_t(&mut rng),
            parts,
        };
        report.record(
            instance,
            &|i| eval_fractional(i, kinds),
            &CoverInstance::shrink,
        );
    }
    report.finish(trials)
}

// ---------------------------------------------------------------------------
// Mixture inequality.

#[derive(Clone, Serialize)]
struct MixtureInstance {
    dist: Vec<Vec<f64>>,
    t: f64,
    blocks: Vec<Vec<usize>>,
    masses: Vec<Vec<f64>>,
    lambdas: Vec<f64>,
}

impl MixtureInstance {
    fn shrink(&self) -> Vec<MixtureInstance> {
        let n = self.dist.len();
        let mut out = Vec::new();
        for k in 0..n {
            let mut blocks = Vec::new();
            let mut masses = Vec::new();
            let mut lambdas = Vec::new();
            for ((block, mass), &lambda) in
                self.blocks.iter().zip(&self.masses).zip(&self.lambdas)
            {
                let kept: Vec<(usize, f64)> = block
                    .iter()
                    .zip(mass)
                    .filter(|(&i, _)| i != k)
                    .map(|(&i, &m)| (if i > k { i - 1 } else { i }, m))
                    .collect();
                if kept.is_empty() {
                    continue;
                }
                let total: f64 = kept.iter().map(|(_, m)| m).sum();
                if !(total > 0.0) {
                    continue;
                }
                blocks.push(kept.iter().map(|(i, _)| *i).collect());
                masses.push(kept.iter().map(|(_, m)| m / total).collect());
                lambdas.push(lambda);
            }
            let lambda_total: f64 = lambdas.iter().sum();
            if blocks.is_empty() || !(lambda_total > 0.0) {
                continue;
            }
            for l in lambdas.iter_mut() {
                *l /= lambda_total;
            }
            out.push(MixtureInstance {
                dist: drop_point(&self.dist, k),
                t: self.t,
                blocks,
                masses,
                lambdas,
            });
        }
        out
    }

    fn spec(&self) -> (FiniteMetricSpace, MixtureSpec) {
        let space = space_of(&self.dist);
        let n = space.n();
        let components: Vec<ProbabilityVector> = self
            .blocks
            .iter()
            .zip(&self.masses)
            .map(|(block, mass)| {
                let mut p = vec![0.0; n];
                for (&i, &m) in block.iter().zip(mass) {
                    p[i] = m;
                }
                ProbabilityVector::new(p).expect("block masses are normalized")
            })
            .collect();
        let spec = MixtureSpec::new(components, self.lambdas.clone())
            .expect("instance mixtures stay valid");
        (space, spec)
    }
}

fn eval_mixture(
    inst: &MixtureInstance,
    kinds: &[PartitionKind],
    alphas: &[f64],
) -> Vec<Assertion> {
    let (space, spec) = inst.spec();
    let z = SimilarityMatrix::laplace(&space, inst.t).expect("positive scale");
    let mixture = spec.mixture();
    let diversity = |p: &ProbabilityVector, alpha: f64| -> f64 {
        alpha_complexity(p, &z, alpha).expect("valid order").exp()
    };

    let nb = spec.n_components();
    let mut assertions = Vec::new();
    for &kind in kinds {
        let partition = match FractionalPartition::new(nb, kind) {
            Ok(p) => p,
            Err(_) => continue,
        };
        for &alpha in alphas {
            let lhs = diversity(&mixture, alpha);
            let mut rhs = 0.0;
            for (s, w) in partition.sets() {
                let mass: f64 = s.iter().map(|&i| inst.lambdas[i]).sum();
                if !(mass > 0.0) {
                    // Zero-mass components drop out of the bound.
                    continue;
                }
                rhs += w * diversity(&spec.sub_mixture(s).expect("positive mass"), alpha);
            }
            assertions.push(Assertion::le(
                format!("mixture[{},{}]", kind_label(kind), alpha_label(alpha)),
                lhs,
                rhs,
            ));
        }
    }
    assertions
}

/// `exp H_alpha(mixture) <= sum_s beta(s) exp H_alpha(sub-mixture)` for
/// random disjoint-support mixtures, every partition kind, and every
/// requested order.
pub fn check_mixture_inequality(
    model: &RandomModel,
    trials: usize,
    alphas: &[f64],
    tol: f64,
) -> CheckReport {
    let kinds = [
        PartitionKind::Singletons,
        PartitionKind::LeaveOneOut,
        PartitionKind::UniformK(2),
    ];
    let mut report = ReportBuilder::new("mixture_inequality", model.seed, tol);
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        let space = model.sample_space(&mut rng);
        let n = space.n();
        let nb = rng.gen_range(2..=3.min(n));
        let assignment: Vec<usize> = loop {
            let assignment: Vec<usize> = (0..n).map(|_| rng.gen_range(0..nb)).collect();
            if (0..nb).all(|b| assignment.iter().any(|&a| a == b)) {
                break assignment;
            }
        };
        let blocks: Vec<Vec<usize>> = (0..nb)
            .map(|b| {
                (0..n)
                    .filter(|&i| assignment[i] == b)
                    .collect()
            })
            .collect();
        let masses: Vec<Vec<f64>> = blocks
            .iter()
            .map(|block| gen::dirichlet(&mut rng, block.len()))
            .collect();
        let mut lambdas = gen::dirichlet(&mut rng, nb);
        if trial % 4 == 3 && nb >= 2 {
            // Exercise the zero-mass component path.
            let drop = rng.gen_range(0..nb);
            lambdas[drop] = 0.0;
            let total: f64 = lambdas.iter().sum();
            for l in lambdas.iter_mut() {
                *l /= total;
            }
        }
        let instance = MixtureInstance {
            dist: space.distance_rows(),
            t: model.sample_t(&mut rng),
            blocks,
            masses,
            lambdas,
        };
        report.record(
            instance,
            &|i| eval_mixture(i, &kinds, alphas),
            &MixtureInstance::shrink,
        );
    }
    report.finish(trials)
}

// ---------------------------------------------------------------------------
// Order independence of the supremum.

#[derive(Clone, Serialize)]
struct SpaceInstance {
    dist: Vec<Vec<f64>>,
    t: f64,
}

impl SpaceInstance {
    fn shrink(&self) -> Vec<SpaceInstance> {
        let n = self.dist.len();
        if n <= 1 {
            return Vec::new();
        }
        (0..n)
            .map(|k| SpaceInstance {
                dist: drop_point(&self.dist, k),
                t: self.t,
            })
            .collect()
    }
}

const ORACLE_ITERATIONS: usize = 3000;
const ORACLE_SEED: u64 = 0x5eed;

fn eval_alpha_independence(inst: &SpaceInstance) -> Vec<Assertion> {
    let space = space_of(&inst.dist);
    let exact = max_diversity_exact(&space, inst.t).expect("desk scale").d;
    let mut assertions = Vec::new();
    let mut values = Vec::new();
    for alpha in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
        match simplex_oracle(&space, inst.t, alpha, ORACLE_ITERATIONS, ORACLE_SEED) {
            Ok(v) => {
                values.push(v);
                assertions.push(Assertion::eq_zero(
                    format!("alpha_independence[{}]", alpha_label(alpha)),
                    v - exact,
                ));
            }
            Err(_) => assertions.push(Assertion::positive(
                format!("oracle_failed[{}]", alpha_label(alpha)),
                -1.0,
            )),
        }
    }
    let spread = values.iter().fold(f64::NEG_INFINITY, |m, v| m.max(*v))
        - values.iter().fold(f64::INFINITY, |m, v| m.min(*v));
    assertions.push(Assertion::eq_zero("alpha_spread", spread));
    // Large finite order as a proxy for infinity, at a 10x looser tolerance
    // (slack scaled so one threshold applies).
    if let Ok(v) = simplex_oracle(&space, inst.t, 64.0, ORACLE_ITERATIONS, ORACLE_SEED) {
        assertions.push(Assertion::eq_zero(
            "alpha_independence_proxy[64]",
            (v - exact) * 0.1,
        ));
    }
    assertions
}

/// The simplex oracle agrees with exact enumeration across orders
/// `{0, 1/2, 1, 2, inf}`, with order 64 as a limit proxy for infinity.
pub fn check_alpha_independence(model: &RandomModel, trials: usize, tol: f64) -> CheckReport {
    let mut report = ReportBuilder::new("alpha_independence", model.seed, tol);
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        let space = model.sample_space(&mut rng);
        let instance = SpaceInstance {
            dist: space.distance_rows(),
            t: model.sample_t(&mut rng),
        };
        report.record(instance, &eval_alpha_independence, &SpaceInstance::shrink);
    }
    report.finish(trials)
}

// ---------------------------------------------------------------------------
// Cardinality limit.

#[derive(Clone, Serialize)]
struct WellSeparatedInstance {
    dist: Vec<Vec<f64>>,
}

impl WellSeparatedInstance {
    fn shrink(&self) -> Vec<WellSeparatedInstance> {
        let n = self.dist.len();
        if n <= 1 {
            return Vec::new();
        }
        (0..n)
            .map(|k| WellSeparatedInstance {
                dist: drop_point(&self.dist, k),
            })
            .collect()
    }
}

const LIMIT_SCALE: f64 = 100.0;

fn eval_cardinality_limit(inst: &WellSeparatedInstance) -> Vec<Assertion> {
    let space = space_of(&inst.dist);
    let n = space.n() as f64;
    let kappa_at = |t: f64| max_diversity_exact(&space, t).expect("desk scale").kappa;
    let kappa_limit = kappa_at(LIMIT_SCALE);
    vec![
        Assertion::eq_zero("cardinality_limit", kappa_limit + 1.0 - n),
        Assertion::le("kappa_monotone[1,10]", kappa_at(1.0), kappa_at(10.0)),
        Assertion::le("kappa_monotone[10,100]", kappa_at(10.0), kappa_limit),
        Assertion::le("kappa_below_cardinality", kappa_limit, n - 1.0),
    ]
}

/// At scale 100 a space with minimum distance at least 1/2 has diversity
/// within tolerance of its cardinality, approached monotonically.
pub fn check_cardinality_limit(model: &RandomModel, trials: usize, tol: f64) -> CheckReport {
    let mut report = ReportBuilder::new("cardinality_limit", model.seed, tol);
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        let mut space = model.sample_space(&mut rng);
        let min_d = space.min_distance();
        if min_d.is_finite() && min_d < 0.5 {
            space = space.scaled(0.5 / min_d).expect("positive factor");
        }
        let instance = WellSeparatedInstance {
            dist: space.distance_rows(),
        };
        report.record(
            instance,
            &eval_cardinality_limit,
            &WellSeparatedInstance::shrink,
        );
    }
    report.finish(trials)
}

// ---------------------------------------------------------------------------
// Exploratory submodularity survey.

#[derive(Clone, Serialize)]
struct WedgeTripleInstance {
    dist_a: Vec<Vec<f64>>,
    bp_a: usize,
    dist_b: Vec<Vec<f64>>,
    bp_b: usize,
    dist_c: Vec<Vec<f64>>,
    bp_c: usize,
    t: f64,
}

impl WedgeTripleInstance {
    fn shrink(&self) -> Vec<WedgeTripleInstance> {
        let mut out = Vec::new();
        for part in 0..3 {
            let (dist, bp) = match part {
                0 => (&self.dist_a, self.bp_a),
                1 => (&self.dist_b, self.bp_b),
                _ => (&self.dist_c, self.bp_c),
            };
            for k in 0..dist.len() {
                if k == bp {
                    continue;
                }
                let (nd, nbp) = drop_nonbase(dist, bp, k);
                let mut next = self.clone();
                match part {
                    0 => {
                        next.dist_a = nd;
                        next.bp_a = nbp;
                    }
                    1 => {
                        next.dist_b = nd;
                        next.bp_b = nbp;
                    }
                    _ => {
                        next.dist_c = nd;
                        next.bp_c = nbp;
                    }
                }
                out.push(next);
            }
        }
        out
    }

    fn wedges(
        &self,
    ) -> (
        PointedFiniteMetricSpace,
        PointedFiniteMetricSpace,
        PointedFiniteMetricSpace,
        PointedFiniteMetricSpace,
    ) {
        let a = PointedFiniteMetricSpace::new(space_of(&self.dist_a), self.bp_a).unwrap();
        let b = PointedFiniteMetricSpace::new(space_of(&self.dist_b), self.bp_b).unwrap();
        let c = PointedFiniteMetricSpace::new(space_of(&self.dist_c), self.bp_c).unwrap();
        let ab = wedge_sum(&a, &b).expect("valid parts");
        let abc = wedge_sum(&ab, &c).expect("valid parts");
        let ac = wedge_sum(&a, &c).expect("valid parts");
        let bc = wedge_sum(&b, &c).expect("valid parts");
        (abc, ac, bc, c)
    }
}

fn eval_submodularity_identity(inst: &WedgeTripleInstance) -> Vec<Assertion> {
    let (abc, ac, bc, c) = inst.wedges();
    if let (Ok(mabc), Ok(mac), Ok(mbc), Ok(mc)) = (
        magnitude(&abc.space, inst.t),
        magnitude(&ac.space, inst.t),
        magnitude(&bc.space, inst.t),
        magnitude(&c.space, inst.t),
    ) {
        vec![Assertion::eq_zero(
            "magnitude_submodularity_identity",
            (mabc + mc) - (mac + mbc),
        )]
    } else {
        Vec::new()
    }
}

/// Surveys the open question whether `kappa(A v B v C) + kappa(C) <=
/// kappa(A v C) + kappa(B v C)`: outcomes are tallied, never asserted. The
/// magnitude version is an identity and is checked exactly.
pub fn explore_submodularity(model: &RandomModel, trials: usize) -> CheckReport {
    let tol = crate::tolerances::CHECK_EXACT;
    let mut report = ReportBuilder::new("explore_submodularity", model.seed, tol);
    let mut satisfied = 0usize;
    let mut violated = 0usize;
    let mut min_slack = f64::INFINITY;
    let mut max_slack = f64::NEG_INFINITY;
    for trial in 0..trials {
        let mut rng = model.trial_rng(trial);
        let mut parts = Vec::new();
        for _ in 0..3 {
            let s = model.sample_space(&mut rng);
            let bp = rng.gen_range(0..s.n());
            parts.push((s.distance_rows(), bp));
        }
        let instance = WedgeTripleInstance {
            dist_a: parts[0].0.clone(),
            bp_a: parts[0].1,
            dist_b: parts[1].0.clone(),
            bp_b: parts[1].1,
            dist_c: parts[2].0.clone(),
            bp_c: parts[2].1,
            t: model.sample_t(&mut rng),
        };

        let (abc, ac, bc, c) = instance.wedges();
        let kappa = |s: &FiniteMetricSpace| {
            max_diversity_exact(s, instance.t).expect("desk scale").kappa
        };
        let slack = kappa(&ac.space) + kappa(&bc.space) - kappa(&abc.space) - kappa(&c.space);
        if slack >= -tol {
            satisfied += 1;
        } else {
            violated += 1;
        }
        min_slack = min_slack.min(slack);
        max_slack = max_slack.max(slack);

        report.record(
            instance,
            &eval_submodularity_identity,
            &WedgeTripleInstance::shrink,
        );
    }
    report.note(format!(
        "submodularity survey: {satisfied} satisfied, {violated} violated, slack range [{min_slack:.6e}, {max_slack:.6e}]"
    ));
    report.finish(trials)
}
