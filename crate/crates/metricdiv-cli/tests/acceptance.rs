//! Acceptance suite: every release criterion, one test each, with a
//! printed pass/fail line (visible under `--nocapture` or on failure).
//!
//! Run with `cargo test -p metricdiv-cli --test acceptance`.

use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use metricdiv::harness::registry;
use metricdiv::{
    alpha_complexity, epsilon_net_diversity, max_diversity_exact, real_set_diversity,
    renyi_entropy, simplex_oracle, CheckReport, ModelKind, ProbabilityVector, RandomModel,
    RealCompactSet, SimilarityMatrix,
};

const SEED: u64 = 20_240_817;

fn verdict(criterion: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {criterion}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {criterion} failed: {detail}");
}

fn run_registry_check(name: &str) -> CheckReport {
    registry::run_check(name, SEED, None, None).expect("registry name")
}

#[test]
fn criterion_01_diversity_axioms() {
    let start = Instant::now();
    let report = run_registry_check("diversity_axioms");
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "01 diversity_axioms",
        report.passed() && report.trials == 500 && elapsed < 60.0,
        &format!(
            "{} violations in {} trials, tol {:e}, {:.2}s",
            report.violations.len(),
            report.trials,
            report.tolerance,
            elapsed
        ),
    );
}

#[test]
fn criterion_02_oracle_equivalence_on_the_line() {
    let start = Instant::now();
    let model = RandomModel::new(ModelKind::UniformPointsOnLine, (2, 10), (1.0, 1.0), SEED);
    let mut worst = 0.0f64;
    for trial in 0..100 {
        let (space, t) = model.sample_for_trial(trial);
        let exact = max_diversity_exact(&space, t).unwrap().d;
        let oracle = simplex_oracle(&space, t, 2.0, 20_000, SEED).unwrap();
        worst = worst.max((exact - oracle).abs());
    }
    let elapsed = start.elapsed().as_secs_f64();
    verdict(
        "02 oracle_equivalence",
        worst <= 1e-6 && elapsed < 30.0,
        &format!("max |exact - oracle| = {worst:.3e} over 100 spaces, {elapsed:.2}s"),
    );
}

#[test]
fn criterion_03_alpha_independence() {
    let report = run_registry_check("alpha_independence");
    verdict(
        "03 alpha_independence",
        report.passed() && report.trials == 50,
        &format!(
            "{} violations in {} trials at spread tolerance {:e}",
            report.violations.len(),
            report.trials,
            report.tolerance
        ),
    );
}

#[test]
fn criterion_04_wedge_subadditivity() {
    let report = run_registry_check("wedge_subadditivity");
    verdict(
        "04 wedge_subadditivity",
        report.passed() && report.trials == 500,
        &format!(
            "{} violations in {} trials (diversity bound and magnitude identity), worst slack {:+.3e}",
            report.violations.len(),
            report.trials,
            report.worst_slack
        ),
    );
}

#[test]
fn criterion_05_minkowski_superlinearity() {
    let report = run_registry_check("minkowski_superlinearity");
    verdict(
        "05 minkowski_superlinearity",
        report.passed() && report.trials == 500,
        &format!(
            "{} violations in {} trials (sumset, affine grid, concavity), worst slack {:+.3e}",
            report.violations.len(),
            report.trials,
            report.worst_slack
        ),
    );
}

#[test]
fn criterion_06_fractional_subadditivity() {
    let report = run_registry_check("fractional_subadditivity");
    verdict(
        "06 fractional_subadditivity",
        report.passed(),
        &format!(
            "{} violations in {} trials across partition kinds incl. disjointified covers",
            report.violations.len(),
            report.trials
        ),
    );
}

#[test]
fn criterion_07_mixture_inequality() {
    let report = run_registry_check("mixture_inequality");
    verdict(
        "07 mixture_inequality",
        report.passed() && report.trials == 200 && report.tolerance == 1e-8,
        &format!(
            "{} violations in {} trials at tol {:e}",
            report.violations.len(),
            report.trials,
            report.tolerance
        ),
    );
}

#[test]
fn criterion_08_closed_form_vs_epsilon_net() {
    let interval = RealCompactSet::new(vec![(0.0, 1.0)]).unwrap();
    let union = RealCompactSet::new(vec![(0.0, 1.0), (2.0, 3.0)]).unwrap();
    let mut pass = true;
    let mut detail = String::new();
    for (name, set) in [("[0,1]", &interval), ("[0,1]u[2,3]", &union)] {
        let closed = real_set_diversity(set, 1.0).unwrap();
        let net = epsilon_net_diversity(set, 1.0, 1e-3).unwrap();
        pass &= (closed - net).abs() <= 1e-2;
        // Net values refine monotonically as the spacing halves.
        let coarse = epsilon_net_diversity(set, 1.0, 4e-3).unwrap();
        let mid = epsilon_net_diversity(set, 1.0, 2e-3).unwrap();
        pass &= mid >= coarse - 1e-10 && net >= mid - 1e-10;
        detail.push_str(&format!(
            "{name}: closed {closed:.6} vs net {net:.6}, refinement {coarse:.8} <= {mid:.8} <= {net:.8}; "
        ));
    }
    verdict("08 closed_form_vs_epsilon_net", pass, detail.trim_end());
}

#[test]
fn criterion_09_cardinality_limit() {
    let report = run_registry_check("cardinality_limit");
    verdict(
        "09 cardinality_limit",
        report.passed() && report.tolerance == 1e-3,
        &format!(
            "{} violations in {} trials at tol {:e}",
            report.violations.len(),
            report.trials,
            report.tolerance
        ),
    );
}

#[test]
fn criterion_10_kronecker_reduction() {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let orders = [0.0, 0.5, 1.0, 2.0, 7.5, f64::INFINITY];
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=8);
        let raw: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let p = ProbabilityVector::from_weights(&raw).unwrap();
        let z = SimilarityMatrix::kronecker(n);
        for alpha in orders {
            let kernelized = alpha_complexity(&p, &z, alpha).unwrap();
            let plain = renyi_entropy(&p, alpha).unwrap();
            worst = worst.max((kernelized - plain).abs());
        }
    }
    verdict(
        "10 kronecker_reduction",
        worst <= 1e-12,
        &format!("max |H^Z_a - H_a| = {worst:.3e} over 1000 distributions x {} orders", orders.len()),
    );
}

#[test]
fn criterion_11_certificate_validity() {
    let models = [
        RandomModel::new(ModelKind::UniformPointsOnLine, (1, 8), (0.5, 2.0), SEED),
        RandomModel::new(ModelKind::UniformPointsInCube(2), (1, 8), (0.5, 2.0), SEED + 1),
        RandomModel::new(
            ModelKind::RandomMetricViaShortestPath,
            (1, 8),
            (0.5, 2.0),
            SEED + 2,
        ),
    ];
    let mut checked = 0usize;
    let mut worst_gap = f64::INFINITY;
    let mut worst_support = 0.0f64;
    let mut pass = true;
    for model in &models {
        for trial in 0..70 {
            let (space, t) = model.sample_for_trial(trial);
            let result = max_diversity_exact(&space, t).unwrap();
            let z = SimilarityMatrix::laplace(&space, t).unwrap();
            pass &= result.certificate_holds(&z, 1e-8);
            let zp = z.apply(result.maximizer.as_slice());
            for &x in &result.support_subset {
                worst_support = worst_support.max((zp[x] - 1.0 / result.d).abs());
            }
            worst_gap = worst_gap.min(result.certificate_gap);
            pass &= result.certificate_gap >= -1e-8;
            checked += 1;
        }
    }
    verdict(
        "11 certificate_validity",
        pass,
        &format!(
            "{checked} maximizers: max on-support deviation {worst_support:.3e}, min gap {worst_gap:+.3e}"
        ),
    );
}

#[test]
fn criterion_12_determinism() {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_metricdiv"))
            .args(["verify", "--seed", "7", "--trials", "25"])
            .output()
            .unwrap();
        assert!(out.status.success(), "verify must pass");
        out.stdout
    };
    let first = run();
    let second = run();
    verdict(
        "12 determinism",
        first == second && !first.is_empty(),
        &format!("two verify runs, {} bytes each, byte-identical", first.len()),
    );
}
