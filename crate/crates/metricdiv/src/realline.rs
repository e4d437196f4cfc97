//! Diversity of compact subsets of the real line.
//!
//! For a union of disjoint closed intervals the maximum diversity at scale
//! `t` has the closed form
//!
//! ```text
//!   D(E) = 1 + t len(E) / 2 + sum_gaps tanh(t g / 2)
//! ```
//!
//! where `len(E)` is the total interval length and the `g` are the gaps
//! between consecutive intervals. The epsilon-net route realizes the same
//! quantity as a supremum over finite subsets and serves as the independent
//! cross-check of the formula.

use crate::diversity::{max_diversity_exact_with_cap, DEFAULT_N_MAX};
use crate::error::{Error, Result};
use crate::kernel::SimilarityMatrix;
use crate::space::{RealCompactSet, RealFiniteSet};
use crate::tolerances;
use crate::weighting;

/// Closed-form maximum diversity of a compact subset of the line.
pub fn real_set_diversity(e: &RealCompactSet, t: f64) -> Result<f64> {
    if e.is_empty() {
        return Err(Error::EmptySet);
    }
    if !(t > 0.0) {
        return Err(Error::NonpositiveScale(t));
    }
    let interior = t * e.total_length() / 2.0;
    let boundary: f64 = e.gaps().iter().map(|g| (t * g / 2.0).tanh()).sum();
    Ok(1.0 + interior + boundary)
}

/// The finite subset used by the epsilon-net route: all interval endpoints
/// plus grid points at the given spacing inside each interval. Halving the
/// spacing refines the net in place, so the resulting values are
/// nondecreasing.
pub fn epsilon_net(e: &RealCompactSet, spacing: f64) -> Result<RealFiniteSet> {
    if !(spacing > 0.0) {
        return Err(Error::NonpositiveSpacing(spacing));
    }
    let mut points = Vec::new();
    for &(a, b) in e.intervals() {
        points.push(a);
        let mut k = 1u64;
        loop {
            let x = a + (k as f64) * spacing;
            if x >= b {
                break;
            }
            points.push(x);
            k += 1;
        }
        if b > a {
            points.push(b);
        }
    }
    RealFiniteSet::new(points)
}

/// Maximum diversity of the epsilon net of `e`. Small nets go through exact
/// enumeration; larger ones fall back to the full-set weighting, which is
/// valid whenever it is strictly positive (always the case on the line).
pub fn epsilon_net_diversity(e: &RealCompactSet, t: f64, spacing: f64) -> Result<f64> {
    if e.is_empty() {
        return Err(Error::EmptySet);
    }
    if !(t > 0.0) {
        return Err(Error::NonpositiveScale(t));
    }
    let net = epsilon_net(e, spacing)?;
    let space = net.to_space()?;
    if space.n() <= DEFAULT_N_MAX {
        return Ok(max_diversity_exact_with_cap(&space, t, DEFAULT_N_MAX)?.d);
    }
    let z = SimilarityMatrix::laplace(&space, t)?;
    let w = weighting::weighting(&z).map_err(|_| Error::TooLarge {
        n: space.n(),
        max: DEFAULT_N_MAX,
    })?;
    if !w.is_strictly_positive(tolerances::POSITIVE_WEIGHT) {
        return Err(Error::TooLarge {
            n: space.n(),
            max: DEFAULT_N_MAX,
        });
    }
    Ok(w.sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn degenerate_point_has_unit_diversity() {
        let e = RealCompactSet::point(0.0).unwrap();
        assert_eq!(real_set_diversity(&e, 1.0).unwrap(), 1.0);
    }

    #[test]
    fn two_point_set_matches_finite_space() {
        let e = RealCompactSet::new(vec![(0.0, 0.0), (3f64.ln(), 3f64.ln())]).unwrap();
        // tanh(ln 3 / 2) = 1/2.
        assert_abs_diff_eq!(real_set_diversity(&e, 1.0).unwrap(), 1.5, epsilon = 1e-12);
    }

    #[test]
    fn unit_interval() {
        let e = RealCompactSet::new(vec![(0.0, 1.0)]).unwrap();
        assert_abs_diff_eq!(real_set_diversity(&e, 1.0).unwrap(), 1.5, epsilon = 1e-15);
    }

    #[test]
    fn two_intervals_with_gap() {
        let e = RealCompactSet::new(vec![(0.0, 1.0), (2.0, 3.0)]).unwrap();
        let expected = 1.0 + 1.0 + 0.5f64.tanh();
        assert_abs_diff_eq!(real_set_diversity(&e, 1.0).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn empty_set_is_an_error() {
        let e = RealCompactSet::new(vec![]).unwrap();
        assert!(matches!(real_set_diversity(&e, 1.0), Err(Error::EmptySet)));
        assert!(matches!(
            epsilon_net_diversity(&e, 1.0, 0.1),
            Err(Error::EmptySet)
        ));
    }

    #[test]
    fn net_of_degenerate_set_is_the_set() {
        let e = RealCompactSet::new(vec![(0.0, 0.0), (1.0, 1.0)]).unwrap();
        for t in [0.5, 1.0, 2.0] {
            let v = epsilon_net_diversity(&e, t, 0.01).unwrap();
            assert_abs_diff_eq!(v, 1.0 + (t / 2.0).tanh(), epsilon = 1e-12);
        }
    }

    #[test]
    fn net_converges_to_closed_form_on_interval() {
        let e = RealCompactSet::new(vec![(0.0, 1.0)]).unwrap();
        let v = epsilon_net_diversity(&e, 1.0, 1e-3).unwrap();
        assert!((v - 1.5).abs() < 1e-2);
    }

    #[test]
    fn net_uses_weighting_fallback_beyond_enumeration() {
        // Spacing 0.02 on [0,1] gives 51 points: too many to enumerate, and
        // the value must match 1 + 50 tanh(0.01) from the line closed form.
        let e = RealCompactSet::new(vec![(0.0, 1.0)]).unwrap();
        let v = epsilon_net_diversity(&e, 1.0, 0.02).unwrap();
        let expected = 1.0 + 50.0 * 0.01f64.tanh();
        assert_abs_diff_eq!(v, expected, epsilon = 1e-9);
    }

    #[test]
    fn halving_spacing_never_decreases_the_value() {
        let e = RealCompactSet::new(vec![(0.0, 1.0), (2.5, 3.0)]).unwrap();
        let coarse = epsilon_net_diversity(&e, 1.0, 2e-2).unwrap();
        let fine = epsilon_net_diversity(&e, 1.0, 1e-2).unwrap();
        assert!(fine >= coarse - 1e-10);
    }

    #[test]
    fn degenerate_sets_match_exact_enumeration() {
        let xs = [0.0, 0.7, 1.9, 2.4];
        let e = RealCompactSet::new(xs.iter().map(|&x| (x, x)).collect()).unwrap();
        let closed = real_set_diversity(&e, 1.3).unwrap();
        let space = RealFiniteSet::new(xs.to_vec()).unwrap().to_space().unwrap();
        let exact = crate::diversity::max_diversity_exact(&space, 1.3).unwrap().d;
        assert_abs_diff_eq!(closed, exact, epsilon = 1e-9);
    }

    #[test]
    fn bad_spacing_rejected() {
        let e = RealCompactSet::point(0.0).unwrap();
        assert!(matches!(
            epsilon_net_diversity(&e, 1.0, 0.0),
            Err(Error::NonpositiveSpacing(_))
        ));
    }
}
