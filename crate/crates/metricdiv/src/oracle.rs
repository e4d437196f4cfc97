//! Simplex-optimization oracle for maximum diversity.
//!
//! This provides an independent route to the value computed by subset
//! enumeration. For order 2 the problem is minimization of the quadratic
//! form `p' Z p` over the simplex, handled by conditional gradient with away
//! steps and exact line search; the duality gap certifies the optimum when
//! the kernel is positive definite (always the case for subsets of the
//! line). For other orders a projected-gradient ascent with seeded random
//! restarts is used. Every candidate the search produces is a feasible
//! distribution, so the returned value is a lower bound on the maximum
//! diversity in general and matches it when the maximizing support is found.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::entropy::alpha_complexity;
use crate::error::{Error, Result};
use crate::kernel::SimilarityMatrix;
use crate::prob::ProbabilityVector;
use crate::space::FiniteMetricSpace;
use crate::tolerances;
use crate::weighting;

/// Random restarts for the non-quadratic orders.
const RESTARTS: usize = 8;

/// Smooth order used to steer the search when the requested order is
/// infinity; candidates are always scored with the exact formula.
const INFINITY_SURROGATE: f64 = 32.0;

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

/// Euclidean projection onto the probability simplex.
fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    let mut rho = 0;
    for (j, &uj) in u.iter().enumerate() {
        cumsum += uj;
        let candidate = (cumsum - 1.0) / (j + 1) as f64;
        if uj - candidate > 0.0 {
            theta = candidate;
            rho = j + 1;
        }
    }
    debug_assert!(rho > 0, "projection defined for n >= 1");
    v.iter().map(|&x| (x - theta).max(0.0)).collect()
}

struct QuadraticMin {
    p: Vec<f64>,
    value: f64,
}

/// Minimizes `p' Z p` over the simplex by conditional gradient with away
/// steps and exact line search. Errors if the duality gap has not closed
/// within the iteration cap.
fn conditional_gradient_quadratic(
    z: &SimilarityMatrix,
    iterations: usize,
) -> Result<QuadraticMin> {
    let n = z.n();
    let mut p = vec![1.0 / n as f64; n];
    let mut gap = f64::INFINITY;
    for _ in 0..iterations.max(1) {
        let zp = z.apply(&p);
        let value = dot(&p, &zp);

        let mut s_idx = 0;
        let mut v_idx = 0;
        let mut have_away = false;
        for j in 0..n {
            if zp[j] < zp[s_idx] {
                s_idx = j;
            }
            if p[j] > 0.0 && (!have_away || zp[j] > zp[v_idx]) {
                v_idx = j;
                have_away = true;
            }
        }
        gap = 2.0 * (value - zp[s_idx]);
        if gap <= tolerances::ORACLE_GAP {
            return Ok(QuadraticMin { p, value });
        }
        let away_gap = 2.0 * (zp[v_idx] - value);

        let (mut d, gamma_max) = if gap >= away_gap || p[v_idx] >= 1.0 {
            let mut d: Vec<f64> = p.iter().map(|x| -x).collect();
            d[s_idx] += 1.0;
            (d, 1.0)
        } else {
            let mut d = p.clone();
            d[v_idx] -= 1.0;
            (d, p[v_idx] / (1.0 - p[v_idx]))
        };

        let zd = z.apply(&d);
        let pzd = dot(&p, &zd);
        let dzd = dot(&d, &zd);
        if pzd >= 0.0 {
            // Not a descent direction: stationary up to rounding.
            return Ok(QuadraticMin { p, value });
        }
        let gamma = if dzd > 0.0 {
            (-pzd / dzd).clamp(0.0, gamma_max)
        } else {
            gamma_max
        };
        if gamma == 0.0 {
            return Ok(QuadraticMin { p, value });
        }
        for (pi, di) in p.iter_mut().zip(d.iter_mut()) {
            *pi = (*pi + gamma * *di).max(0.0);
        }
        let total: f64 = p.iter().sum();
        for pi in p.iter_mut() {
            *pi /= total;
        }
    }
    Err(Error::NonConvergence {
        gap,
        iterations: iterations.max(1),
    })
}

/// Objective used while searching: the order-`alpha` complexity as a smooth
/// function of the full vector (zero-mass entries contribute nothing).
fn search_objective(z: &SimilarityMatrix, p: &[f64], alpha: f64) -> f64 {
    let zp = z.apply(p);
    if alpha == 1.0 {
        return -p
            .iter()
            .zip(&zp)
            .filter(|(&pi, _)| pi > 0.0)
            .map(|(&pi, &zi)| pi * zi.ln())
            .sum::<f64>();
    }
    let f: f64 = p
        .iter()
        .zip(&zp)
        .filter(|(&pi, _)| pi > 0.0)
        .map(|(&pi, &zi)| pi * zi.powf(alpha - 1.0))
        .sum();
    if !(f > 0.0) {
        return f64::NEG_INFINITY;
    }
    f.ln() / (1.0 - alpha)
}

fn search_gradient(z: &SimilarityMatrix, p: &[f64], alpha: f64) -> Vec<f64> {
    let n = z.n();
    let zp = z.apply(p);
    if alpha == 1.0 {
        // grad_k = -log(Zp)_k - sum_x p_x Z(x,k) / (Zp)_x
        let ratios: Vec<f64> = p.iter().zip(&zp).map(|(&pi, &zi)| pi / zi).collect();
        let zt_r = z.apply(&ratios);
        return (0..n).map(|k| -zp[k].ln() - zt_r[k]).collect();
    }
    let f: f64 = p
        .iter()
        .zip(&zp)
        .map(|(&pi, &zi)| pi * zi.powf(alpha - 1.0))
        .sum();
    if !(f > 0.0) || !f.is_finite() {
        return vec![0.0; n];
    }
    let weighted: Vec<f64> = p
        .iter()
        .zip(&zp)
        .map(|(&pi, &zi)| pi * zi.powf(alpha - 2.0))
        .collect();
    let zt_w = z.apply(&weighted);
    (0..n)
        .map(|k| {
            let df = zp[k].powf(alpha - 1.0) + (alpha - 1.0) * zt_w[k];
            df / ((1.0 - alpha) * f)
        })
        .collect()
}

/// Projected-gradient ascent with backtracking; returns the final iterate.
fn ascend(z: &SimilarityMatrix, alpha: f64, mut p: Vec<f64>, iterations: usize) -> Vec<f64> {
    let mut current = search_objective(z, &p, alpha);
    let mut stalls = 0;
    for _ in 0..iterations {
        let g = search_gradient(z, &p, alpha);
        let mut eta = 1.0;
        let mut improved = false;
        for _ in 0..40 {
            let trial: Vec<f64> = p.iter().zip(&g).map(|(pi, gi)| pi + eta * gi).collect();
            let projected = project_to_simplex(&trial);
            let value = search_objective(z, &projected, alpha);
            if value > current {
                if value - current < 1e-14 {
                    stalls += 1;
                } else {
                    stalls = 0;
                }
                p = projected;
                current = value;
                improved = true;
                break;
            }
            eta *= 0.5;
        }
        if !improved || stalls >= 3 {
            break;
        }
    }
    p
}

/// If the entries of `p` above `threshold` name a subset with a strictly
/// positive weighting, returns that weighting normalized to a distribution
/// on the full space.
fn polish_support(z: &SimilarityMatrix, p: &[f64], threshold: f64) -> Option<Vec<f64>> {
    let idx: Vec<usize> = p
        .iter()
        .enumerate()
        .filter(|(_, &v)| v > threshold)
        .map(|(i, _)| i)
        .collect();
    if idx.is_empty() {
        return None;
    }
    let sub = z.restrict(&idx);
    let w = weighting::weighting(&sub).ok()?;
    if !w.is_strictly_positive(tolerances::POSITIVE_WEIGHT) {
        return None;
    }
    let total = w.sum();
    let mut full = vec![0.0; z.n()];
    for (wi, &i) in w.w.iter().zip(&idx) {
        full[i] = wi / total;
    }
    Some(full)
}

fn dirichlet(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let total: f64 = g.iter().sum();
        if total > 0.0 {
            return g.iter().map(|v| v / total).collect();
        }
    }
}

/// Best value of `exp H_alpha` over the simplex found by the oracle.
///
/// Candidates are scored with the exact order-`alpha` formula, so the result
/// is always achievable by some distribution. `iterations` bounds both the
/// conditional-gradient loop and each ascent restart; `seed` fixes the
/// random restarts.
pub fn simplex_oracle(
    space: &FiniteMetricSpace,
    t: f64,
    alpha: f64,
    iterations: usize,
    seed: u64,
) -> Result<f64> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::NegativeAlpha(alpha));
    }
    let n = space.n();
    if n == 0 || n == 1 {
        return Ok(1.0);
    }
    let z = SimilarityMatrix::laplace(space, t)?;
    let score = |p: Vec<f64>| -> Result<f64> {
        let pv = ProbabilityVector::new(p)?;
        Ok(alpha_complexity(&pv, &z, alpha)?.exp())
    };

    // A point mass is always feasible.
    let mut best = 1.0f64;

    if alpha == 2.0 {
        let min = conditional_gradient_quadratic(&z, iterations)?;
        best = best.max(1.0 / min.value);
        for threshold in [1e-8, 1e-4] {
            if let Some(candidate) = polish_support(&z, &min.p, threshold) {
                best = best.max(score(candidate)?);
            }
        }
        return Ok(best);
    }

    let search_alpha = if alpha == f64::INFINITY {
        INFINITY_SURROGATE
    } else {
        alpha
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for restart in 0..=RESTARTS {
        let p0 = if restart == 0 {
            vec![1.0 / n as f64; n]
        } else {
            dirichlet(&mut rng, n)
        };
        let p = ascend(&z, search_alpha, p0, iterations);
        best = best.max(score(p.clone())?);
        for threshold in [1e-8, 1e-4] {
            if let Some(candidate) = polish_support(&z, &p, threshold) {
                best = best.max(score(candidate)?);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diversity::max_diversity_exact;
    use crate::space::PointMetric;
    use approx::assert_abs_diff_eq;

    fn line(points: &[f64]) -> FiniteMetricSpace {
        let pts: Vec<Vec<f64>> = points.iter().map(|&x| vec![x]).collect();
        FiniteMetricSpace::from_points(&pts, PointMetric::Euclidean).unwrap()
    }

    #[test]
    fn projection_lands_on_simplex() {
        for v in [
            vec![0.5, 0.5],
            vec![2.0, -1.0, 0.3],
            vec![-1.0, -2.0],
            vec![10.0, 10.0, 10.0, 10.0],
        ] {
            let p = project_to_simplex(&v);
            assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
            assert!(p.iter().all(|&x| x >= 0.0));
        }
        // Projection is the identity on the simplex itself.
        let p = project_to_simplex(&[0.25, 0.75]);
        assert_abs_diff_eq!(p[0], 0.25, epsilon = 1e-15);
    }

    #[test]
    fn two_point_quadratic_oracle() {
        let s = line(&[0.0, 3f64.ln()]);
        let v = simplex_oracle(&s, 1.0, 2.0, 10_000, 0).unwrap();
        assert_abs_diff_eq!(v, 1.5, epsilon = 1e-8);
    }

    #[test]
    fn singleton_any_order() {
        let s = line(&[0.0]);
        for alpha in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
            assert_eq!(simplex_oracle(&s, 1.0, alpha, 100, 0).unwrap(), 1.0);
        }
    }

    #[test]
    fn three_point_line_all_orders_agree() {
        let s = line(&[0.0, 1.0, 2.0]);
        let exact = max_diversity_exact(&s, 1.0).unwrap().d;
        for alpha in [0.5, 1.0, 2.0, f64::INFINITY] {
            let v = simplex_oracle(&s, 1.0, alpha, 3000, 7).unwrap();
            assert!(
                (v - exact).abs() <= 1e-4,
                "alpha {alpha}: oracle {v} vs exact {exact}"
            );
        }
    }

    #[test]
    fn oracle_never_exceeds_exact() {
        let s = line(&[0.0, 0.4, 1.9, 2.3, 4.0]);
        let exact = max_diversity_exact(&s, 1.0).unwrap().d;
        for alpha in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
            let v = simplex_oracle(&s, 1.0, alpha, 2000, 11).unwrap();
            assert!(v <= exact + 1e-9);
        }
    }

    #[test]
    fn oracle_is_deterministic() {
        let s = line(&[0.0, 0.7, 1.1, 3.0]);
        let a = simplex_oracle(&s, 1.0, 0.5, 500, 42).unwrap();
        let b = simplex_oracle(&s, 1.0, 0.5, 500, 42).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn negative_order_rejected() {
        let s = line(&[0.0, 1.0]);
        assert!(matches!(
            simplex_oracle(&s, 1.0, -0.5, 100, 0),
            Err(Error::NegativeAlpha(_))
        ));
    }
}
