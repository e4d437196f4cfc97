//! Renyi entropies and their similarity-sensitive generalization.
//!
//! For a distribution `p` and a similarity kernel `Z`, the order-`alpha`
//! complexity is
//!
//! ```text
//!   (1/(1-alpha)) log sum_x p_x (Zp)_x^(alpha-1)    alpha in [0,1) u (1,inf)
//!   -sum_x p_x log (Zp)_x                           alpha = 1
//!   -log max_{x in supp p} (Zp)_x                   alpha = inf
//! ```
//!
//! with all sums and maxima over the support of `p`. With the Kronecker
//! kernel this is exactly the Renyi entropy of order `alpha`. The general
//! branch is evaluated in the log domain so large finite orders do not
//! underflow.

use crate::error::{Error, Result};
use crate::kernel::SimilarityMatrix;
use crate::prob::ProbabilityVector;

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_nan() || alpha < 0.0 {
        return Err(Error::NegativeAlpha(alpha));
    }
    Ok(())
}

/// `log sum exp(terms)` without overflow; terms must be nonempty.
fn log_sum_exp(terms: &[f64]) -> f64 {
    let m = terms.iter().fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    if !m.is_finite() {
        return m;
    }
    m + terms.iter().map(|t| (t - m).exp()).sum::<f64>().ln()
}

/// Renyi entropy of order `alpha`, in nats. Orders 1 and infinity use their
/// dedicated formulas; everything else goes through the log-domain power sum.
pub fn renyi_entropy(p: &ProbabilityVector, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let support = p.support();
    if support.is_empty() {
        return Ok(0.0);
    }
    if alpha == 1.0 {
        return Ok(-support.iter().map(|&x| p.get(x) * p.get(x).ln()).sum::<f64>());
    }
    if alpha == f64::INFINITY {
        let max = support.iter().map(|&x| p.get(x)).fold(0.0, f64::max);
        return Ok(-max.ln());
    }
    let terms: Vec<f64> = support.iter().map(|&x| alpha * p.get(x).ln()).collect();
    Ok(log_sum_exp(&terms) / (1.0 - alpha))
}

/// Order-`alpha` complexity of `p` with respect to the kernel `z`, in nats.
pub fn alpha_complexity(
    p: &ProbabilityVector,
    z: &SimilarityMatrix,
    alpha: f64,
) -> Result<f64> {
    check_alpha(alpha)?;
    if p.len() != z.n() {
        return Err(Error::DimensionMismatch {
            expected: z.n(),
            got: p.len(),
        });
    }
    let support = p.support();
    if support.is_empty() {
        return Ok(0.0);
    }
    let zp = z.apply(p.as_slice());
    if alpha == 1.0 {
        return Ok(-support.iter().map(|&x| p.get(x) * zp[x].ln()).sum::<f64>());
    }
    if alpha == f64::INFINITY {
        let max = support.iter().map(|&x| zp[x]).fold(0.0, f64::max);
        return Ok(-max.ln());
    }
    let terms: Vec<f64> = support
        .iter()
        .map(|&x| p.get(x).ln() + (alpha - 1.0) * zp[x].ln())
        .collect();
    Ok(log_sum_exp(&terms) / (1.0 - alpha))
}
