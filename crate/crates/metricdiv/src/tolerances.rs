//! Centralized numerical tolerances.
//!
//! The quantities computed here satisfy exact identities and inequalities in
//! real arithmetic; every floating-point comparison against them goes through
//! one of the constants below rather than an ad-hoc literal.

/// Relative tolerance for the metric axioms (symmetry, zero diagonal,
/// triangle inequality). Scaled by the largest distance in the matrix.
pub const METRIC: f64 = 1e-9;

/// Absolute threshold below which a probability entry counts as exact zero.
/// Support membership drives the order-infinity formulas and the maximizer
/// certificate, so it is pinned here rather than left to `> 0.0`.
pub const SUPPORT: f64 = 1e-12;

/// Allowed deviation of a probability vector's total mass from 1.
pub const SIMPLEX: f64 = 1e-9;

/// Max-norm residual above which a weighting solve is declared singular.
pub const SOLVE: f64 = 1e-8;

/// Tolerance on the maximizer certificate: on-support values of `Zp` must
/// equal `1/D` to within this, and `min_x (Zp)(x) - 1/D >= -CERTIFICATE`.
pub const CERTIFICATE: f64 = 1e-8;

/// Strict-positivity threshold on weighting entries during subset
/// enumeration. Entries at or below it would be witnessed equally well by a
/// smaller subset with those points removed.
pub const POSITIVE_WEIGHT: f64 = 1e-12;

/// Absolute collision tolerance when deduplicating point sets on the line.
pub const DEDUP: f64 = 1e-9;

/// Duality-gap threshold for the conditional-gradient oracle at order 2.
pub const ORACLE_GAP: f64 = 1e-10;

/// Covering-identity tolerance for fractional partitions and mixture weights.
pub const PARTITION: f64 = 1e-12;

/// Default tolerance for inequalities backed by exact arithmetic.
pub const CHECK_EXACT: f64 = 1e-9;

/// Default tolerance for inequalities that compare against iterative oracles.
pub const CHECK_ORACLE: f64 = 1e-4;
